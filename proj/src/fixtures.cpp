#include "bk/fixtures.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "bk/error.hpp"

namespace bk {

namespace {

ModelGN diagonal_model(GroupPtr group, const FieldSpec& k, const std::vector<std::vector<int>>& diagonals) {
    std::vector<FFMatrix> gens;
    for (const auto& diag : diagonals) {
        FFMatrix a = identity(k, static_cast<Eigen::Index>(diag.size()));
        for (std::size_t i = 0; i < diag.size(); ++i) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = k.from_int(diag[i]);
        gens.push_back(std::move(a));
    }
    const int dim = diagonals.empty() ? 0 : static_cast<int>(diagonals.front().size());
    return ModelGN::make(Rep::make(std::move(group), k, std::move(gens), dim));
}

void require_odd(int p, const std::string& what) {
    require(p != 2, ErrorCode::BadParams, what + " needs odd p, so that -1 differs from 1");
}

RelationTerm term(const ModelGN& model, std::size_t h, std::vector<int> monomial, int coeff) {
    return {0, h, std::move(monomial), model.V.field().from_int(coeff)};
}

std::vector<int> unit_vector(int d, int j) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    if (j >= 0) e[static_cast<std::size_t>(j)] = 1;
    return e;
}

/// h_s - chi(s) for each generator s
void add_group_relations(const ModelGN& model, const std::vector<int>& chi, Presentation& pres) {
    const FiniteGroup& H = *model.H;
    const auto zero = unit_vector(model.d(), -1);
    for (std::size_t s = 0; s < H.generators().size(); ++s) {
        const std::size_t g = H.generator_element(s);
        Relation r;
        if (g == H.identity()) {
            if (chi[s] == 1) continue;
            r.terms = {term(model, g, zero, 1 - chi[s])};
        } else {
            r.terms = {term(model, g, zero, 1), term(model, H.identity(), zero, -chi[s])};
        }
        pres.relations.push_back(std::move(r));
    }
}

void add_variable_relations(const ModelGN& model, const std::vector<int>& vars, Presentation& pres) {
    for (int j : vars) pres.relations.push_back({{term(model, model.H->identity(), unit_vector(model.d(), j), 1)}});
}

std::vector<int> all_variables(int d) {
    std::vector<int> out(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(j)] = j;
    return out;
}

/// Sign of each generator permutation.
std::vector<int> permutation_signs(const FiniteGroup& H) {
    std::vector<int> out;
    for (const auto& perm : H.generators()) {
        int sign = 1;
        std::vector<bool> seen(perm.size(), false);
        for (std::size_t x = 0; x < perm.size(); ++x) {
            if (seen[x]) continue;
            std::size_t len = 0;
            for (std::size_t y = x; !seen[y]; y = perm[y]) {
                seen[y] = true;
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        out.push_back(sign);
    }
    return out;
}

CatalogModule named(std::string name, Presentation pres) { return {std::move(name), std::move(pres), std::nullopt}; }

}  // namespace

ExampleId ExampleId::parse(const std::string& text) {
    static const std::regex pattern(R"(^\s*([a-z_0-9]+)\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)\s*$)");
    std::smatch match;
    require(std::regex_match(text, match, pattern), ErrorCode::BadParams, "example id must look like name(a,b,...): " + text);
    ExampleId id;
    id.name = match[1];
    std::stringstream ss(match[2].str());
    std::string item;
    while (std::getline(ss, item, ',')) id.params.push_back(std::stoi(item));
    const std::map<std::string, std::size_t> arity = {
        {"heisenberg", 3}, {"dihedral_abelian", 2}, {"s3_reflection", 1}, {"cyclic", 3}};
    const auto it = arity.find(id.name);
    require(it != arity.end(), ErrorCode::BadParams, "unknown example " + id.name);
    require(id.params.size() == it->second, ErrorCode::BadParams,
            id.name + " takes " + std::to_string(it->second) + " parameters");
    return id;
}

std::string ExampleId::str() const {
    std::string out = name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + std::to_string(params[i]);
    return out + ")";
}

const CatalogModule& Catalog::module(const std::string& name) const {
    for (const auto& m : modules)
        if (m.name == name) return m;
    fail(ErrorCode::Schema, "catalog has no module named " + name);
}

FieldSpec field_of_order(int p, std::int64_t q) {
    require(is_prime(p), ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    require(is_prime_power_of(q, p), ErrorCode::BadCharacteristic,
            std::to_string(q) + " is not a power of " + std::to_string(p));
    int s = 0;
    for (std::int64_t x = q; x > 1; x /= p) ++s;
    require(s >= 1, ErrorCode::BadParams, "field order must be at least p");
    return make_field(p, s);
}

ModelGN heisenberg_model(int r, int p, std::int64_t q) {
    require(r >= 1, ErrorCode::BadParams, "heisenberg needs r >= 1");
    require_odd(p, "heisenberg");
    std::vector<int> diag(static_cast<std::size_t>(2 * r + 1), -1);
    diag.back() = 1;
    return diagonal_model(cyclic_group(2), field_of_order(p, q), {diag});
}

ModelGN dihedral_abelian_model(int p, std::int64_t q) {
    require_odd(p, "dihedral_abelian");
    return diagonal_model(cyclic_group(2), field_of_order(p, q), {{-1}});
}

ModelGN klein_model(int p, std::int64_t q) {
    require_odd(p, "klein");
    return diagonal_model(elementary_abelian_group(2, 2), field_of_order(p, q), {{-1, 1}, {1, -1}});
}

ModelGN c2_scalar_model(int p, std::int64_t q) {
    require_odd(p, "c2_scalar");
    return diagonal_model(cyclic_group(2), field_of_order(p, q), {{-1, -1}});
}

ModelGN s3_reflection_model(std::int64_t q) {
    int p = 2;
    while (q % p != 0) ++p;
    const FieldSpec k = field_of_order(p, q);
    const GroupPtr s3 = symmetric_group(3);
    // basis u1 = e0 - e1, u2 = e1 - e2; a sum-zero w equals w0 u1 - w2 u2
    std::vector<FFMatrix> gens;
    for (const auto& perm : s3->generators()) {
        FFMatrix a(2, 2);
        const std::vector<std::vector<int>> basis = {{1, -1, 0}, {0, 1, -1}};
        for (int i = 0; i < 2; ++i) {
            std::vector<int> w(3, 0);
            for (int x = 0; x < 3; ++x) w[perm[static_cast<std::size_t>(x)]] += basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
            a(i, 0) = k.from_int(w[0]);
            a(i, 1) = k.from_int(-w[2]);
        }
        gens.push_back(std::move(a));
    }
    return ModelGN::make(Rep::make(s3, k, std::move(gens)));
}

ModelGN cyclic_model(int n, int p, std::int64_t q) {
    require(n >= 1, ErrorCode::BadParams, "cyclic needs n >= 1");
    const GroupPtr c = cyclic_group(n);
    return ModelGN::make(Rep::make(c, field_of_order(p, q), std::vector<FFMatrix>(c->generators().size(), FFMatrix(0, 0)), 0));
}

Presentation free_presentation(int degree) { return {{degree}, {}}; }

Presentation sym_presentation(const ModelGN& model, int degree) {
    Presentation pres{{degree}, {}};
    add_group_relations(model, std::vector<int>(model.H->generators().size(), 1), pres);
    return pres;
}

Presentation linear_presentation(const ModelGN& model, const std::vector<int>& chi, int degree) {
    require(chi.size() == model.H->generators().size(), ErrorCode::DimMismatch, "one character value per generator");
    Presentation pres{{degree}, {}};
    add_group_relations(model, chi, pres);
    add_variable_relations(model, all_variables(model.d()), pres);
    return pres;
}

Presentation group_algebra_presentation(const ModelGN& model, int degree) {
    Presentation pres{{degree}, {}};
    add_variable_relations(model, all_variables(model.d()), pres);
    return pres;
}

Presentation sym_quotient_presentation(const ModelGN& model, const std::vector<int>& killed, int degree) {
    Presentation pres = sym_presentation(model, degree);
    add_variable_relations(model, killed, pres);
    return pres;
}

Catalog example_catalog(const ExampleId& id) {
    Catalog cat;
    cat.example = id.str();
    const auto& a = id.params;
    const std::size_t ngens = [&] {
        if (id.name == "heisenberg") cat.model = heisenberg_model(a[0], a[1], a[2]);
        else if (id.name == "dihedral_abelian") cat.model = dihedral_abelian_model(a[0], a[1]);
        else if (id.name == "s3_reflection") cat.model = s3_reflection_model(a[0]);
        else if (id.name == "cyclic") cat.model = cyclic_model(a[0], a[1], a[2]);
        else fail(ErrorCode::BadParams, "unknown example " + id.name);
        return cat.model.H->generators().size();
    }();
    const ModelGN& model = cat.model;
    const int d = model.d();
    const std::vector<int> trivial(ngens, 1);

    cat.modules.push_back(named("R", free_presentation()));
    if (d > 0) {
        cat.modules.push_back(named("R[1]", free_presentation(-1)));
        cat.modules.push_back(named("Sym(V)", sym_presentation(model)));
    }
    cat.modules.push_back(named("k", linear_presentation(model, trivial)));
    if (d > 0) cat.modules.push_back(named("kH", group_algebra_presentation(model)));

    if (id.name == "heisenberg") {
        const int r = a[0];
        const int z = 2 * r;
        cat.modules.push_back(named("k_sign", linear_presentation(model, {-1})));
        cat.modules.push_back(named("Sym(V)/(z)", sym_quotient_presentation(model, {z})));
        std::vector<int> killed = {z};
        std::string name = "Sym(V)/(z";
        for (int j = 0; j < r; ++j) {
            killed.push_back(j);
            name += ",x_" + std::to_string(j);
        }
        cat.modules.push_back(named(name + ")", sym_quotient_presentation(model, killed)));
        cat.rank_catalogs.push_back({r, {"k", "k_sign", "kH", cat.modules.back().name}});
    } else if (id.name == "dihedral_abelian") {
        cat.modules.push_back(named("k_sign", linear_presentation(model, {-1})));
        cat.rank_catalogs.push_back({0, {"k", "k_sign"}});
        cat.rank_catalogs.push_back({d, {"R", "Sym(V)", "k"}});
    } else if (id.name == "s3_reflection") {
        if (model.p != 2) cat.modules.push_back(named("sign", linear_presentation(model, permutation_signs(*model.H))));
        if (model.p == 3) {
            // u1 - u2 = e0 + e1 + e2 is fixed by S3 in characteristic 3
            Presentation pres = sym_presentation(model);
            pres.relations.push_back({{term(model, 0, {1, 0}, 1), term(model, 0, {0, 1}, -1)}});
            cat.modules.push_back(named("Sym(V)/(z)", std::move(pres)));
        }
        cat.rank_catalogs.push_back({d, {"R", "Sym(V)", "k"}});
    } else {
        cat.rank_catalogs.push_back({0, {"R", "k"}});
    }
    return cat;
}

GradedModule build_module(const ModelGN& model, const CatalogModule& m, const WindowOptions& defaults) {
    WindowOptions opts = defaults;
    if (m.cutoff) opts.cutoff = m.cutoff;
    return module_from_presentation(model, m.presentation, opts);
}

}  // namespace bk
