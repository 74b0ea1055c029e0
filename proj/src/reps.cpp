#include "bk/reps.hpp"

#include <algorithm>

#include "bk/error.hpp"
#include "bk/lifting.hpp"

namespace bk {

namespace {

int order_mod(std::int64_t q, int m) {
    if (m == 1) return 1;
    int e = 1;
    std::int64_t x = q % m;
    while (x != 1) {
        x = (x * q) % m;
        ++e;
    }
    return e;
}

FFMatrix block_diag(const FFMatrix& a, const FFMatrix& b, const FieldSpec& k) {
    FFMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.setConstant(k.zero());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

}  // namespace

CharacterContext CharacterContext::canonical(const FieldSpec& k, int m) {
    CharacterContext ctx;
    ctx.k = k;
    ctx.m = m;
    ctx.kprime = make_field(k.p(), k.s() * order_mod(k.q(), m));
    ctx.embed = find_embedding(k, ctx.kprime);
    ctx.omega = primitive_root_of_unity(ctx.kprime, m);
    return ctx;
}

CharacterContext CharacterContext::compatible(const CharacterContext& base, const FieldSpec& bigger) {
    require(bigger.p() == base.k.p() && bigger.s() % base.k.s() == 0, ErrorCode::BadParams,
            "field does not contain k");
    CharacterContext ctx;
    ctx.k = bigger;
    ctx.m = base.m;
    ctx.kprime = make_field(bigger.p(), bigger.s() * order_mod(bigger.q(), base.m));
    ctx.embed = find_embedding(bigger, ctx.kprime);
    const FieldEmbedding k_to_big = find_embedding(base.k, bigger);
    // the class of x generates k over F_p
    const FFElem x = base.k.s() > 1 ? base.k.from_code(static_cast<std::uint32_t>(base.k.p())) : base.k.one();
    const FieldEmbedding lift = find_embedding(base.kprime, ctx.kprime,
                                               std::make_pair(base.embed(x), ctx.embed(k_to_big(x))));
    ctx.omega = lift(base.omega);
    return ctx;
}

CycloNum CharacterContext::value(const FFMatrix& a) const {
    return lift_multiplicities(eigen_multiplicities(apply(embed, a), omega, m), m);
}

CycloNum CharacterContext::value(const SparseMap<FFElem>& a) const {
    SparseMap<FFElem> b = a;
    for (auto& row : b.images)
        for (auto& [j, x] : row) x = embed(x);
    return lift_multiplicities(eigen_multiplicities(b, omega, m), m);
}

// ---------------------------------------------------------------------------

Rep Rep::make(GroupPtr group, FieldSpec field, std::vector<FFMatrix> generators, int dim) {
    require(generators.size() == group->generators().size(), ErrorCode::DimMismatch,
            "expected " + std::to_string(group->generators().size()) + " generator matrices");
    Rep r;
    r.group_ = std::move(group);
    r.field_ = field;
    r.dim_ = generators.empty() ? std::max(dim, 0) : static_cast<int>(generators.front().rows());
    require(dim < 0 || dim == r.dim_, ErrorCode::DimMismatch, "generator matrices do not match the dimension");
    for (auto& g : generators) {
        require(g.rows() == r.dim_ && g.cols() == r.dim_, ErrorCode::DimMismatch, "generator matrices differ in size");
        g = attach(g, field);
    }
    r.generators_ = std::move(generators);
    const FiniteGroup& G = *r.group_;
    r.elements_.resize(G.order());
    r.elements_[0] = identity(field, r.dim_);
    for (std::size_t e = 1; e < G.order(); ++e) {
        const auto [parent, s] = G.parent(e);
        r.elements_[e] = r.elements_[parent] * r.generators_[s];
    }
    for (std::size_t e = 0; e < G.order(); ++e)
        for (std::size_t s = 0; s < r.generators_.size(); ++s)
            require(r.elements_[e] * r.generators_[s] == r.elements_[G.mul(e, G.generator_element(s))],
                    ErrorCode::BadParams, "matrices do not satisfy the group relations");
    return r;
}

Rep trivial_rep(GroupPtr group, FieldSpec field, int dim) {
    std::vector<FFMatrix> gens(group->generators().size(), identity(field, dim));
    return Rep::make(std::move(group), field, std::move(gens), dim);
}

Rep tensor(const Rep& a, const Rep& b) {
    require(a.group() == b.group() && a.field() == b.field(), ErrorCode::DimMismatch, "tensor of unrelated reps");
    std::vector<FFMatrix> gens;
    for (std::size_t s = 0; s < a.generators().size(); ++s) gens.push_back(kronecker(a.generators()[s], b.generators()[s]));
    if (gens.empty()) return trivial_rep(a.group(), a.field(), a.dim() * b.dim());
    return Rep::make(a.group(), a.field(), std::move(gens));
}

Rep direct_sum(const Rep& a, const Rep& b) {
    require(a.group() == b.group() && a.field() == b.field(), ErrorCode::DimMismatch, "sum of unrelated reps");
    std::vector<FFMatrix> gens;
    for (std::size_t s = 0; s < a.generators().size(); ++s)
        gens.push_back(block_diag(a.generators()[s], b.generators()[s], a.field()));
    if (gens.empty()) return trivial_rep(a.group(), a.field(), a.dim() + b.dim());
    return Rep::make(a.group(), a.field(), std::move(gens));
}

std::vector<std::vector<int>> subsets(int d, int j) {
    std::vector<std::vector<int>> out;
    if (j < 0 || j > d) return out;
    std::vector<int> cur(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = j - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - j + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int l = i + 1; l < j; ++l) cur[static_cast<std::size_t>(l)] = cur[static_cast<std::size_t>(l - 1)] + 1;
    }
    return out;
}

FFMatrix exterior_power_matrix(const FFMatrix& a, int j) {
    const auto sets = subsets(static_cast<int>(a.rows()), j);
    const auto n = static_cast<Eigen::Index>(sets.size());
    FFMatrix out(n, n);
    FFMatrix minor(j, j);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& I = sets[static_cast<std::size_t>(r)];
            const auto& J = sets[static_cast<std::size_t>(c)];
            for (int x = 0; x < j; ++x)
                for (int y = 0; y < j; ++y) minor(x, y) = a(I[static_cast<std::size_t>(x)], J[static_cast<std::size_t>(y)]);
            out(r, c) = j == 0 ? FFElem(1) : determinant(minor);
        }
    return out;
}

Rep exterior_power(const Rep& a, int j) {
    require(j >= 0 && j <= a.dim(), ErrorCode::DimMismatch, "exterior power beyond the dimension");
    std::vector<FFMatrix> gens;
    for (const auto& g : a.generators()) gens.push_back(exterior_power_matrix(g, j));
    if (gens.empty()) return trivial_rep(a.group(), a.field(), static_cast<int>(subsets(a.dim(), j).size()));
    return Rep::make(a.group(), a.field(), std::move(gens));
}

Rep induce(const Rep& sub, GroupPtr group) {
    const FiniteGroup& S = *sub.group();
    const FiniteGroup& G = *group;
    require(S.n_points() == G.n_points(), ErrorCode::NotSubgroup, "subgroup acts on different points");
    std::vector<std::size_t> to_g(S.order());
    std::vector<std::size_t> to_s(G.order(), OrbitPartition::npos);
    for (std::size_t i = 0; i < S.order(); ++i) {
        const auto x = G.index_of(S.element(i));
        require(x.has_value(), ErrorCode::NotSubgroup, "element outside the group");
        to_g[i] = *x;
        to_s[*x] = i;
    }
    // right cosets S t
    std::vector<std::size_t> coset_of(G.order(), OrbitPartition::npos), reps;
    for (std::size_t x = 0; x < G.order(); ++x) {
        if (coset_of[x] != OrbitPartition::npos) continue;
        for (auto h : to_g) coset_of[G.mul(h, x)] = reps.size();
        reps.push_back(x);
    }
    const auto n = static_cast<Eigen::Index>(reps.size());
    const Eigen::Index d = sub.dim();
    std::vector<FFMatrix> gens;
    for (std::size_t s = 0; s < G.generators().size(); ++s) {
        FFMatrix a(n * d, n * d);
        a.setConstant(sub.field().zero());
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const auto tg = G.mul(reps[i], G.generator_element(s));
            const auto j = coset_of[tg];
            const auto h = G.mul(tg, G.inv(reps[j]));
            a.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) = sub.matrix(to_s[h]);
        }
        gens.push_back(std::move(a));
    }
    if (gens.empty()) return trivial_rep(group, sub.field(), static_cast<int>(n * d));
    return Rep::make(std::move(group), sub.field(), std::move(gens));
}

// ---------------------------------------------------------------------------

BrauerChar brauer_character(const Rep& a, int p, const CharacterContext& ctx) {
    BrauerChar chi{a.group(), ctx.m, {}};
    for (auto g : p_regular_set(*a.group(), p)) {
        const FFMatrix mat = ctx.k == a.field() ? a.matrix(g) : apply(find_embedding(a.field(), ctx.k), a.matrix(g));
        chi.values.emplace(g, ctx.value(mat));
    }
    return chi;
}

BrauerChar brauer_character(const Rep& a, int p) {
    require(a.field().p() == p, ErrorCode::BadCharacteristic, "representation is not in characteristic p");
    const int m = static_cast<int>(p_prime_part(a.group()->exponent(), p));
    return brauer_character(a, p, CharacterContext::canonical(a.field(), m));
}

ModelGN ModelGN::make(Rep v) {
    ModelGN model;
    model.H = v.group();
    model.p = v.field().p();
    model.q = v.field().q();
    const int m = static_cast<int>(p_prime_part(model.H->exponent(), model.p));
    model.ctx_ = std::make_shared<const CharacterContext>(CharacterContext::canonical(v.field(), m));
    model.V = std::move(v);
    return model;
}

int ModelGN::m() const { return ctx_->m; }
const CharacterContext& ModelGN::context() const { return *ctx_; }

LaurentPoly psi(const ModelGN& model, std::size_t g) {
    require(model.H->element_order(g) % model.p != 0, ErrorCode::BadParams, "Psi needs a p-regular element");
    LaurentPoly out(model.m());
    const FFMatrix& a = model.V.matrix(g);
    for (int j = 0; j <= model.d(); ++j) {
        CycloNum c = model.context().value(exterior_power_matrix(a, j));
        if (j % 2 == 1) c = -c;
        out.set_coeff(j, c);
    }
    return out;
}

int centralizer_dim(const ModelGN& model, std::size_t g) {
    const FFMatrix& a = model.V.matrix(g);
    const int dim = model.d() - static_cast<int>(rank(FFMatrix(a - identity(model.V.field(), a.rows()))));
    require(psi(model, g).vanishing_order_at_one() == dim, ErrorCode::Internal,
            "fixed-space dimension disagrees with the multiplicity of t = 1 in Psi");
    return dim;
}

SFiltration s_filtration(const ModelGN& model, int i) {
    SFiltration out;
    out.orbits = model.orbits();
    for (std::size_t b = 0; b < out.orbits.size(); ++b) {
        const int c = centralizer_dim(model, out.orbits.representative(b));
        out.centralizer_dims.push_back(c);
        if (c <= i) out.selected.push_back(b);
        if (c > model.d() - 1) out.radical.push_back(b);
    }
    return out;
}

ClassFunction to_class_function(const BrauerChar& chi) {
    ClassFunction f{chi.group, std::vector<CycloNum>(chi.group->order(), CycloNum(0))};
    for (const auto& [g, v] : chi.values) f.values[g] = v;
    return f;
}

ClassFunction induce_class_function(const ClassFunction& f, const Subgroup& h) {
    const FiniteGroup& G = *f.group;
    require(is_subgroup(G, h), ErrorCode::NotSubgroup, "H is not a subgroup");
    std::vector<bool> in(G.order(), false);
    for (auto x : h) in[x] = true;
    ClassFunction out{f.group, std::vector<CycloNum>(G.order(), CycloNum(0))};
    const CycloNum scale(Rational(1, static_cast<long>(h.size())));
    for (std::size_t g = 0; g < G.order(); ++g) {
        CycloNum sum(0);
        for (std::size_t x = 0; x < G.order(); ++x) {
            const auto y = G.mul(x, G.mul(g, G.inv(x)));
            if (in[y]) sum += f.values[y];
        }
        out.values[g] = sum * scale;
    }
    return out;
}

int char_span_rank(const std::vector<BrauerChar>& chars, const OrbitPartition& orbits) {
    if (chars.empty() || orbits.size() == 0) return 0;
    CycloMatrix mat(static_cast<Eigen::Index>(chars.size()), static_cast<Eigen::Index>(orbits.size()));
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t b = 0; b < orbits.size(); ++b)
            mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = chars[i].at(orbits.representative(b));
    return static_cast<int>(rank(mat));
}

}  // namespace bk
