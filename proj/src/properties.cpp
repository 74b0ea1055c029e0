#include "bk/properties.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "bk/groups.hpp"
#include "bk/linalg.hpp"
#include "bk/lifting.hpp"
#include "bk/ratfunc.hpp"

namespace bk {

namespace {

using Rng = std::mt19937_64;
using Check = std::function<std::optional<std::string>(Rng&)>;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

FieldSpec random_field(Rng& rng) {
    static const std::vector<std::pair<int, int>> fields = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {7, 2}, {2, 4}, {13, 1}};
    const auto& [p, s] = fields[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(fields.size()) - 1))];
    return make_field(p, s);
}

FFElem random_elem(Rng& rng, const FieldSpec& k) { return k.from_code(static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(k.q()) - 1))); }

CycloNum random_cyclo(Rng& rng, int m) {
    CycloNum x(0);
    for (int i = 0; i < m; ++i) {
        const int c = uniform(rng, -3, 3);
        if (c != 0) x += CycloNum(c) * CycloNum::zeta(m, i);
    }
    return x;
}

Perm random_perm(Rng& rng, std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

GroupPtr random_group(Rng& rng) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 6));
    std::vector<Perm> gens;
    for (int i = uniform(rng, 1, 3); i > 0; --i) gens.push_back(random_perm(rng, n));
    return FiniteGroup::close(n, std::move(gens));
}

std::pair<int, std::int64_t> random_characteristic(Rng& rng) {
    static const std::vector<std::pair<int, std::int64_t>> choices = {{2, 2}, {2, 4}, {3, 3}, {3, 9}, {5, 5}, {5, 25}, {7, 7}};
    return choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(choices.size()) - 1))];
}

std::int64_t factorial(std::size_t n) { return n <= 1 ? 1 : static_cast<std::int64_t>(n) * factorial(n - 1); }

std::optional<std::string> failure(bool ok, const std::string& what) {
    if (ok) return std::nullopt;
    return what;
}

// ---------------------------------------------------------------------------

std::optional<std::string> ff_field_axioms(Rng& rng) {
    const FieldSpec k = random_field(rng);
    const FFElem a = random_elem(rng, k), b = random_elem(rng, k), c = random_elem(rng, k);
    const std::string where = " in GF(" + std::to_string(k.q()) + ")";
    if ((a + b) * c != a * c + b * c) return "distributivity" + where;
    if ((a * b) * c != a * (b * c)) return "associativity" + where;
    if (a + (-a) != k.zero()) return "additive inverse" + where;
    if (!a.is_zero() && a * a.inverse() != k.one()) return "multiplicative inverse" + where;
    if (pow(a, k.q()) != a) return "Frobenius fixes the field" + where;
    if (k.from_digits(k.digits(a)) != a) return "digit round trip" + where;
    return std::nullopt;
}

std::optional<std::string> cyclo_ring(Rng& rng) {
    const int m = uniform(rng, 1, 15);
    const CycloNum x = random_cyclo(rng, m), y = random_cyclo(rng, m), z = random_cyclo(rng, m);
    const std::string where = " in Q(zeta_" + std::to_string(m) + ")";
    if ((x + y) * z != x * z + y * z) return "distributivity" + where;
    if (x - x != CycloNum(0)) return "x - x" + where;
    if (!x.is_zero() && x * x.inverse() != CycloNum(1)) return "inverse" + where;
    int a = uniform(rng, 1, std::max(1, m - 1));
    while (std::gcd(a, m) != 1) ++a;
    if ((x * y).galois(a) != x.galois(a) * y.galois(a)) return "Galois map is multiplicative" + where;
    if (pow(CycloNum::zeta(m, 1), m) != CycloNum(1)) return "zeta^m = 1" + where;
    return std::nullopt;
}

std::optional<std::string> lift_roots(Rng& rng) {
    const FieldSpec k = random_field(rng);
    std::vector<int> divisors;
    for (int m = 1; m <= static_cast<int>(k.q()) - 1; ++m)
        if ((static_cast<int>(k.q()) - 1) % m == 0) divisors.push_back(m);
    const int m = divisors[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(divisors.size()) - 1))];
    const FFElem omega = primitive_root_of_unity(k, m);
    const int i = uniform(rng, 0, 3 * m);
    const int j = uniform(rng, 0, 3 * m);
    const CycloNum li = lift_root(pow(omega, i), omega, m), lj = lift_root(pow(omega, j), omega, m);
    if (li != CycloNum::zeta(m, i)) return "lift of omega^i is zeta^i";
    return failure(lift_root(pow(omega, i) * pow(omega, j), omega, m) == li * lj, "lifting is multiplicative");
}

std::optional<std::string> brauer_lift(Rng& rng) {
    const FieldSpec k = random_field(rng);
    const int m = static_cast<int>(k.q()) - 1;
    const FFElem omega = primitive_root_of_unity(k, m);
    const int n = uniform(rng, 1, 4);
    FFMatrix diag = identity(k, n);
    CycloNum expected(0);
    for (int i = 0; i < n; ++i) {
        const int e = uniform(rng, 0, m - 1);
        diag(i, i) = pow(omega, e);
        expected += CycloNum::zeta(m, e);
    }
    FFMatrix p(n, n);
    std::optional<FFMatrix> inv;
    do {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) p(r, c) = random_elem(rng, k);
        inv = inverse(p);
    } while (!inv);
    const FFMatrix a = attach(p * diag * *inv, k);
    return failure(lift_multiplicities(eigen_multiplicities(a, omega, m), m) == expected, "Brauer value is invariant under conjugation");
}

std::optional<std::string> rational_round_trip(Rng& rng) {
    const int m = uniform(rng, 1, 3);
    const int den = uniform(rng, 0, 3);
    LaurentPoly num(m);
    const int lo = uniform(rng, -2, 2);
    for (int deg = lo; deg <= lo + uniform(rng, 0, 4); ++deg) num.set_coeff(deg, random_cyclo(rng, m));
    if (num.is_zero()) num.set_coeff(lo, CycloNum(1));
    const RatFuncT f{num, den, m};
    const int top = num.max_degree() + m * den + 16;
    const RatFuncT g = reconstruct_rational(f.expand(top), top, m, 3, 4);
    return failure(g.expand(top + 12) == f.expand(top + 12), "reconstruction re-expands to the original function");
}

std::optional<std::string> laurent_one_minus_t(Rng& rng) {
    const int m = uniform(rng, 1, 6);
    LaurentPoly f(m);
    for (int deg = -2; deg <= 3; ++deg) f.set_coeff(deg, random_cyclo(rng, m));
    const int e = uniform(rng, 0, 3);
    const LaurentPoly g = f * LaurentPoly::one_minus_t_pow(m, 1, e);
    if (!f.is_zero() && g.vanishing_order_at_one() < e) return "(1-t)^e divides f (1-t)^e";
    if (e == 0) return std::nullopt;
    const auto q = g.divide_one_minus_t();
    return failure(q.has_value() && *q * LaurentPoly::one_minus_t_pow(m, 1, 1) == g, "division by 1-t is exact");
}

// ---------------------------------------------------------------------------

std::optional<std::string> group_closure(Rng& rng) {
    const GroupPtr g = random_group(rng);
    if (factorial(g->n_points()) % static_cast<std::int64_t>(g->order()) != 0) return "order divides n!";
    if (static_cast<std::int64_t>(g->order()) % g->exponent() != 0) return "exponent divides order";
    for (int t = 0; t < 8; ++t) {
        const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g->order()) - 1));
        const auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g->order()) - 1));
        const auto c = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g->order()) - 1));
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c))) return "associativity";
        if (g->mul(a, g->inv(a)) != g->identity()) return "inverse";
        if (g->pow(a, g->element_order(a)) != g->identity()) return "a^ord(a) = 1";
        if (g->exponent() % g->element_order(a) != 0) return "element order divides exponent";
    }
    return std::nullopt;
}

std::optional<std::string> class_equation(Rng& rng) {
    const GroupPtr g = random_group(rng);
    const OrbitPartition classes = conjugacy_classes(*g);
    std::size_t total = 0;
    for (const auto& block : classes.blocks) {
        if (g->order() % block.size() != 0) return "class size divides the order";
        total += block.size();
    }
    return failure(total == g->order(), "classes partition the group");
}

std::optional<std::string> galois_partition(Rng& rng) {
    const GroupPtr g = random_group(rng);
    const auto [p, q] = random_characteristic(rng);
    const OrbitPartition orbits = galois_orbits(*g, p, q);
    const auto regular = p_regular_set(*g, p);
    std::size_t total = 0;
    for (const auto& b : orbits.blocks) total += b.size();
    if (total != regular.size()) return "orbits partition the p-regular set";
    const OrbitPartition classes = conjugacy_classes(*g);
    for (const auto& block : classes.blocks) {
        if (orbits.block_of[block.front()] == OrbitPartition::npos) continue;
        for (std::size_t x : block)
            if (orbits.block_of[x] != orbits.block_of[block.front()]) return "orbits are unions of classes";
    }
    for (std::size_t x : regular)
        if (orbits.block_of[g->pow(x, q)] != orbits.block_of[x]) return "orbits are closed under x -> x^q";
    return std::nullopt;
}

std::optional<std::string> regular_decomposition(Rng& rng) {
    const GroupPtr g = random_group(rng);
    const int p = std::vector<int>{2, 3, 5}[static_cast<std::size_t>(uniform(rng, 0, 2))];
    const auto x = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g->order()) - 1));
    const auto [s, u] = p_regular_part(*g, x, p);
    if (g->mul(s, u) != x) return "x = s u";
    if (g->mul(s, u) != g->mul(u, s)) return "s and u commute";
    if (g->element_order(s) % p == 0) return "s is p-regular";
    std::int64_t ou = g->element_order(u);
    while (ou % p == 0) ou /= p;
    return failure(ou == 1, "u is a p-element");
}

std::optional<std::string> subgroup_lagrange(Rng& rng) {
    const GroupPtr g = random_group(rng);
    std::vector<std::size_t> gens;
    for (int i = uniform(rng, 0, 2); i > 0; --i) gens.push_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g->order()) - 1)));
    const Subgroup u = subgroup_closure(*g, gens);
    if (!is_subgroup(*g, u)) return "closure is a subgroup";
    if (g->order() % u.size() != 0) return "Lagrange";
    if (is_normal(*g, u) && quotient(*g, u).group->order() * u.size() != g->order()) return "|G/U| |U| = |G|";
    return std::nullopt;
}

std::optional<std::string> hall_bijection(Rng& rng) {
    const GroupPtr g = random_group(rng);
    const auto [p, q] = random_characteristic(rng);
    for (const auto& u : normal_p_subgroups(*g, p)) {
        const HallReport r = hall_check(*g, u, p, q);
        if (r.upstairs.size() != r.downstairs.size()) return "orbit counts agree";
    }
    return std::nullopt;
}

}  // namespace

std::size_t PropertyReport::instances(const std::string& suite) const {
    std::size_t n = 0;
    for (const auto& r : results)
        if (r.suite == suite) n += r.instances;
    return n;
}

bool PropertyReport::ok() const {
    for (const auto& r : results)
        if (r.failures > 0) return false;
    return true;
}

PropertyReport run_properties(std::uint64_t seed, std::size_t per_property) {
    PropertyReport report;
    report.seed = seed;
    Rng rng(seed);
    const std::vector<std::tuple<const char*, const char*, Check>> checks = {
        {"exactnum", "ff_field_axioms", ff_field_axioms},
        {"exactnum", "cyclo_ring", cyclo_ring},
        {"exactnum", "lift_roots", lift_roots},
        {"exactnum", "brauer_lift", brauer_lift},
        {"exactnum", "rational_round_trip", rational_round_trip},
        {"exactnum", "laurent_one_minus_t", laurent_one_minus_t},
        {"groups", "group_closure", group_closure},
        {"groups", "class_equation", class_equation},
        {"groups", "galois_partition", galois_partition},
        {"groups", "regular_decomposition", regular_decomposition},
        {"groups", "subgroup_lagrange", subgroup_lagrange},
        {"groups", "hall_bijection", hall_bijection},
    };
    for (const auto& [suite, name, check] : checks) {
        PropertyResult r{suite, name, 0, 0, {}};
        for (std::size_t i = 0; i < per_property; ++i) {
            ++r.instances;
            std::optional<std::string> bad;
            try {
                bad = check(rng);
            } catch (const std::exception& e) {
                bad = e.what();
            }
            if (!bad) continue;
            if (r.failures++ == 0) r.first_failure = "instance " + std::to_string(i) + ": " + *bad;
        }
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace bk
