#include "bk/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "bk/error.hpp"

namespace bk {

namespace {

constexpr std::size_t table_limit = 1024;

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a;
        else parent[a] = b;
    }
};

OrbitPartition partition_from(const FiniteGroup& g, std::vector<std::size_t> base, UnionFind& uf) {
    OrbitPartition out;
    std::sort(base.begin(), base.end());
    out.base = base;
    out.block_of.assign(g.order(), OrbitPartition::npos);
    std::map<std::size_t, std::size_t> root_block;
    for (auto x : base) {
        auto [it, inserted] = root_block.try_emplace(uf.find(x), out.blocks.size());
        if (inserted) out.blocks.emplace_back();
        out.blocks[it->second].push_back(x);
        out.block_of[x] = it->second;
    }
    return out;
}

Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

}  // namespace

std::string cycle_string(const Perm& p) {
    std::ostringstream os;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        os << "(";
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            if (j != i) os << " ";
            os << j;
            seen[j] = true;
        }
        os << ")";
    }
    const std::string s = os.str();
    return s.empty() ? "()" : s;
}

Perm FiniteGroup::compose(const Perm& a, const Perm& b) const {
    Perm out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out[x] = b[a[x]];
    return out;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::close(std::size_t n_points, std::vector<Perm> generators,
                                                      std::size_t max_order) {
    for (const auto& g : generators) {
        require(g.size() == n_points, ErrorCode::Schema, "generator has wrong length");
        std::vector<bool> hit(n_points, false);
        for (auto x : g) {
            require(x < n_points && !hit[x], ErrorCode::Schema, "generator is not a permutation");
            hit[x] = true;
        }
    }
    std::shared_ptr<FiniteGroup> grp(new FiniteGroup());
    FiniteGroup& G = *grp;
    G.n_points_ = n_points;
    G.generators_ = std::move(generators);
    G.elements_.push_back(identity_perm(n_points));
    G.index_.emplace(G.elements_[0], 0);
    G.words_.emplace_back();
    G.parents_.emplace_back(0, 0);
    for (std::size_t e = 0; e < G.elements_.size(); ++e) {
        for (std::size_t s = 0; s < G.generators_.size(); ++s) {
            Perm c = G.compose(G.elements_[e], G.generators_[s]);
            if (G.index_.count(c)) continue;
            require(G.elements_.size() < max_order, ErrorCode::TooLarge,
                    "group closure exceeds " + std::to_string(max_order) + " elements");
            G.index_.emplace(c, G.elements_.size());
            G.elements_.push_back(std::move(c));
            auto w = G.words_[e];
            w.push_back(s);
            G.words_.push_back(std::move(w));
            G.parents_.emplace_back(e, s);
        }
    }
    const std::size_t n = G.elements_.size();
    for (const auto& g : G.generators_) G.generator_elements_.push_back(G.index_.at(g));
    if (n <= table_limit) {
        G.table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                G.table_[a * n + b] = static_cast<std::uint32_t>(G.index_.at(G.compose(G.elements_[a], G.elements_[b])));
    }
    G.inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        Perm inv(n_points);
        for (std::size_t x = 0; x < n_points; ++x) inv[G.elements_[a][x]] = static_cast<std::uint32_t>(x);
        G.inverse_[a] = G.index_.at(inv);
    }
    G.orders_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::int64_t k = 1;
        for (std::size_t x = a; x != 0; x = G.mul(x, a)) ++k;
        G.orders_[a] = k;
        G.exponent_ = std::lcm(G.exponent_, G.orders_[a]);
    }
    return grp;
}

std::optional<std::size_t> FiniteGroup::index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * order() + b];
    return index_.at(compose(elements_[a], elements_[b]));
}

std::size_t FiniteGroup::pow(std::size_t a, std::int64_t e) const {
    const std::int64_t o = orders_[a];
    e %= o;
    if (e < 0) e += o;
    std::size_t out = 0, base = a;
    while (e > 0) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

std::int64_t p_prime_part(std::int64_t n, int p) {
    while (n % p == 0) n /= p;
    return n;
}

RegularDecomposition p_regular_part(const FiniteGroup& g, std::size_t x, int p) {
    const std::int64_t o = g.element_order(x);
    const std::int64_t opp = p_prime_part(o, p);
    const std::int64_t op = o / opp;
    // a = 1 mod opp, a = 0 mod op
    std::int64_t a = 0;
    for (std::int64_t k = 0; k < opp; ++k)
        if ((op * k) % opp == 1 % opp) {
            a = (op * k) % o;
            break;
        }
    return {g.pow(x, a), g.pow(x, 1 - a)};
}

std::vector<std::size_t> p_regular_set(const FiniteGroup& g, int p) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < g.order(); ++x)
        if (g.element_order(x) % p != 0) out.push_back(x);
    return out;
}

bool is_prime_power_of(std::int64_t q, int p) {
    if (q < p) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

GaloisData galois_data(const FiniteGroup& g, int p, std::int64_t q) {
    require(is_prime_power_of(q, p), ErrorCode::BadCharacteristic,
            std::to_string(q) + " is not a power of " + std::to_string(p));
    GaloisData out{p, q, static_cast<int>(p_prime_part(g.exponent(), p)), {}};
    std::set<int> powers;
    std::int64_t t = 1 % out.m;
    while (powers.insert(static_cast<int>(t)).second) t = (t * (q % out.m)) % out.m;
    out.t_powers.assign(powers.begin(), powers.end());
    return out;
}

OrbitPartition galois_orbits(const FiniteGroup& g, int p, std::int64_t q) {
    require(is_prime_power_of(q, p), ErrorCode::BadCharacteristic,
            std::to_string(q) + " is not a power of " + std::to_string(p));
    const auto base = p_regular_set(g, p);
    UnionFind uf(g.order());
    for (auto x : base) {
        for (std::size_t s = 0; s < g.generators().size(); ++s) uf.unite(x, g.conj(x, g.generator_element(s)));
        uf.unite(x, g.pow(x, q));
    }
    return partition_from(g, base, uf);
}

OrbitPartition conjugacy_classes(const FiniteGroup& g) {
    std::vector<std::size_t> base(g.order());
    std::iota(base.begin(), base.end(), std::size_t{0});
    UnionFind uf(g.order());
    for (auto x : base)
        for (std::size_t s = 0; s < g.generators().size(); ++s) uf.unite(x, g.conj(x, g.generator_element(s)));
    return partition_from(g, base, uf);
}

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<std::size_t> elems{0};
    in[0] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto s : gens) {
            const auto c = g.mul(elems[i], s);
            if (!in[c]) {
                in[c] = true;
                elems.push_back(c);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& u) {
    if (u.empty() || !std::binary_search(u.begin(), u.end(), std::size_t{0})) return false;
    std::vector<bool> in(g.order(), false);
    for (auto x : u) {
        if (x >= g.order()) return false;
        in[x] = true;
    }
    for (auto a : u)
        for (auto b : u)
            if (!in[g.mul(a, b)]) return false;
    return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& u) {
    if (!is_subgroup(g, u)) return false;
    std::vector<bool> in(g.order(), false);
    for (auto x : u) in[x] = true;
    for (auto x : u)
        for (std::size_t s = 0; s < g.generators().size(); ++s)
            if (!in[g.conj(x, g.generator_element(s))]) return false;
    return true;
}

bool is_p_group(const FiniteGroup&, const Subgroup& u, int p) {
    return u.size() == 1 || is_prime_power_of(static_cast<std::int64_t>(u.size()), p);
}

std::vector<Subgroup> normal_p_subgroups(const FiniteGroup& g, int p) {
    std::set<Subgroup> found{Subgroup{0}};
    for (std::size_t x = 1; x < g.order(); ++x) {
        if (p_prime_part(g.element_order(x), p) != 1) continue;
        std::vector<std::size_t> conjugates;
        for (std::size_t y = 0; y < g.order(); ++y) conjugates.push_back(g.conj(x, y));
        auto n = subgroup_closure(g, conjugates);
        if (is_p_group(g, n, p)) found.insert(std::move(n));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<Subgroup> current(found.begin(), found.end());
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                std::vector<std::size_t> gens = current[i];
                gens.insert(gens.end(), current[j].begin(), current[j].end());
                if (found.insert(subgroup_closure(g, gens)).second) grew = true;
            }
    }
    std::vector<Subgroup> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.size() < b.size(); });
    return out;
}

Quotient quotient(const FiniteGroup& g, const Subgroup& u) {
    require(is_normal(g, u), ErrorCode::NotNormal, "subgroup is not normal");
    std::vector<std::size_t> coset_of(g.order(), OrbitPartition::npos);
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (coset_of[x] != OrbitPartition::npos) continue;
        for (auto h : u) coset_of[g.mul(h, x)] = reps.size();
        reps.push_back(x);
    }
    auto action = [&](std::size_t x) {
        Perm p(reps.size());
        for (std::size_t c = 0; c < reps.size(); ++c) p[c] = static_cast<std::uint32_t>(coset_of[g.mul(reps[c], x)]);
        return p;
    };
    std::vector<Perm> gens;
    for (std::size_t s = 0; s < g.generators().size(); ++s) gens.push_back(action(g.generator_element(s)));
    Quotient out;
    out.group = FiniteGroup::close(reps.size(), std::move(gens));
    out.projection.resize(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) out.projection[x] = out.group->index_of(action(x)).value();
    return out;
}

HallReport hall_check(const FiniteGroup& g, const Subgroup& u, int p, std::int64_t q) {
    require(is_subgroup(g, u), ErrorCode::NotSubgroup, "U is not a subgroup");
    require(is_normal(g, u), ErrorCode::NotNormal, "U is not normal in G");
    require(is_p_group(g, u, p), ErrorCode::NotPGroup, "U is not a " + std::to_string(p) + "-group");
    HallReport out;
    out.upstairs = galois_orbits(g, p, q);
    const Quotient quo = quotient(g, u);
    out.quotient_order = quo.group->order();
    out.downstairs = galois_orbits(*quo.group, p, q);
    std::vector<bool> hit(out.downstairs.size(), false);
    for (std::size_t b = 0; b < out.upstairs.size(); ++b) {
        std::size_t image = OrbitPartition::npos;
        for (auto x : out.upstairs.blocks[b]) {
            const auto c = out.downstairs.block_of[quo.projection[x]];
            require(c != OrbitPartition::npos, ErrorCode::BijectionFailure, "p-regular element maps off (G/U)_reg");
            require(image == OrbitPartition::npos || image == c, ErrorCode::BijectionFailure,
                    "orbit " + std::to_string(b) + " splits under projection");
            image = c;
        }
        require(!hit[image], ErrorCode::BijectionFailure, "two orbits share an image");
        hit[image] = true;
        out.pairing.push_back(image);
    }
    require(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }), ErrorCode::BijectionFailure,
            "an orbit of (G/U)_reg has no preimage");
    return out;
}

// ---------------------------------------------------------------------------

GroupPtr cyclic_group(int n) {
    if (n == 1) return FiniteGroup::close(1, {});
    Perm r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + 1) % n);
    return FiniteGroup::close(static_cast<std::size_t>(n), {r});
}

GroupPtr dihedral_group(int n) {
    Perm r(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + 1) % n);
        s[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((n - i) % n);
    }
    return FiniteGroup::close(static_cast<std::size_t>(n), {r, s});
}

GroupPtr symmetric_group(int n) {
    if (n <= 1) return FiniteGroup::close(static_cast<std::size_t>(std::max(n, 1)), {});
    Perm t = identity_perm(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n));
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + 1) % n);
    if (n == 2) return FiniteGroup::close(2, {t});
    return FiniteGroup::close(static_cast<std::size_t>(n), {t, c});
}

GroupPtr alternating_group(int n) {
    require(n >= 3, ErrorCode::BadParams, "alternating group needs n >= 3");
    const auto N = static_cast<std::size_t>(n);
    Perm a = identity_perm(N), b = identity_perm(N);
    a[0] = 1, a[1] = 2, a[2] = 0;
    if (n == 3) return FiniteGroup::close(N, {a});
    if (n % 2 == 1) {
        for (std::size_t i = 0; i < N; ++i) b[i] = static_cast<std::uint32_t>((i + 1) % N);
    } else {
        for (std::size_t i = 1; i < N; ++i) b[i] = static_cast<std::uint32_t>(i + 1 == N ? 1 : i + 1);
    }
    return FiniteGroup::close(N, {a, b});
}

GroupPtr matrix_group_mod_p(int p, int n, const std::vector<std::vector<int>>& matrices) {
    std::size_t npts = 1;
    for (int i = 0; i < n; ++i) npts *= static_cast<std::size_t>(p);
    std::vector<Perm> gens;
    for (const auto& a : matrices) {
        require(a.size() == static_cast<std::size_t>(n * n), ErrorCode::Schema, "matrix has wrong size");
        Perm perm(npts);
        for (std::size_t code = 0; code < npts; ++code) {
            std::vector<int> v(static_cast<std::size_t>(n));
            std::size_t c = code;
            for (int i = 0; i < n; ++i, c /= static_cast<std::size_t>(p)) v[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::size_t>(p));
            std::size_t image = 0, place = 1;
            for (int j = 0; j < n; ++j, place *= static_cast<std::size_t>(p)) {
                int x = 0;
                for (int i = 0; i < n; ++i) x += v[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i * n + j)];
                image += static_cast<std::size_t>(((x % p) + p) % p) * place;
            }
            perm[code] = static_cast<std::uint32_t>(image);
        }
        gens.push_back(std::move(perm));
    }
    return FiniteGroup::close(npts, std::move(gens));
}

GroupPtr quaternion_group() { return matrix_group_mod_p(3, 2, {{0, 2, 1, 0}, {1, 1, 1, 2}}); }
GroupPtr special_linear_2_3() { return matrix_group_mod_p(3, 2, {{1, 1, 0, 1}, {1, 0, 1, 1}}); }
GroupPtr general_linear_2_3() { return matrix_group_mod_p(3, 2, {{1, 1, 0, 1}, {1, 0, 1, 1}, {2, 0, 0, 1}}); }

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t n = a.n_points() + b.n_points();
    std::vector<Perm> gens;
    for (const auto& g : a.generators()) {
        Perm p = identity_perm(n);
        std::copy(g.begin(), g.end(), p.begin());
        gens.push_back(std::move(p));
    }
    for (const auto& g : b.generators()) {
        Perm p = identity_perm(n);
        for (std::size_t x = 0; x < g.size(); ++x) p[a.n_points() + x] = static_cast<std::uint32_t>(a.n_points() + g[x]);
        gens.push_back(std::move(p));
    }
    return FiniteGroup::close(n, std::move(gens));
}

GroupPtr elementary_abelian_group(int p, int rank) {
    GroupPtr out = cyclic_group(1);
    for (int i = 0; i < rank; ++i) out = i == 0 ? cyclic_group(p) : direct_product(*out, *cyclic_group(p));
    return out;
}

std::vector<NamedGroup> group_catalog(std::size_t max_order) {
    std::vector<NamedGroup> all;
    for (int n = 1; n <= 48; ++n) all.push_back({"C" + std::to_string(n), cyclic_group(n)});
    for (int n = 3; n <= 24; ++n) all.push_back({"D" + std::to_string(2 * n), dihedral_group(n)});
    const auto c2 = cyclic_group(2), c3 = cyclic_group(3), c4 = cyclic_group(4);
    const auto s3 = symmetric_group(3), a4 = alternating_group(4), q8 = quaternion_group();
    const auto d8 = dihedral_group(4);
    all.push_back({"S3", s3});
    all.push_back({"S4", symmetric_group(4)});
    all.push_back({"A4", a4});
    all.push_back({"Q8", q8});
    all.push_back({"C2^2", elementary_abelian_group(2, 2)});
    all.push_back({"C2^3", elementary_abelian_group(2, 3)});
    all.push_back({"C2^4", elementary_abelian_group(2, 4)});
    all.push_back({"C3^2", elementary_abelian_group(3, 2)});
    all.push_back({"C3^3", elementary_abelian_group(3, 3)});
    all.push_back({"C2xC4", direct_product(*c2, *c4)});
    all.push_back({"C4xC4", direct_product(*c4, *c4)});
    all.push_back({"C2xC6", direct_product(*c2, *cyclic_group(6))});
    all.push_back({"S3xC3", direct_product(*s3, *c3)});
    all.push_back({"S3xS3", direct_product(*s3, *s3)});
    all.push_back({"A4xC2", direct_product(*a4, *c2)});
    all.push_back({"A4xC3", direct_product(*a4, *c3)});
    all.push_back({"A4xC4", direct_product(*a4, *c4)});
    all.push_back({"Q8xC2", direct_product(*q8, *c2)});
    all.push_back({"Q8xC3", direct_product(*q8, *c3)});
    all.push_back({"D8xC2", direct_product(*d8, *c2)});
    all.push_back({"D8xC3", direct_product(*d8, *c3)});
    all.push_back({"S4xC2", direct_product(*symmetric_group(4), *c2)});
    all.push_back({"SL(2,3)", special_linear_2_3()});
    all.push_back({"GL(2,3)", general_linear_2_3()});
    all.push_back({"Heis(3)", matrix_group_mod_p(3, 3, {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 1}})});
    // C3 : C4 with the generator of order 4 inverting the 3-cycle
    all.push_back({"Dic12", FiniteGroup::close(7, {{1, 2, 0, 3, 4, 5, 6}, {0, 2, 1, 4, 5, 6, 3}})});
    std::vector<NamedGroup> out;
    for (auto& g : all)
        if (g.group->order() <= max_order) out.push_back(std::move(g));
    return out;
}

}  // namespace bk
