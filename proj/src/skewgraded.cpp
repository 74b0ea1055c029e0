#include "bk/skewgraded.hpp"

#include <algorithm>

#include "bk/error.hpp"

namespace bk {

namespace {

void enumerate_monomials(int d, int n, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
    if (pos == d - 1) {
        cur[static_cast<std::size_t>(pos)] = n;
        out.push_back(cur);
        return;
    }
    for (int a = n; a >= 0; --a) {
        cur[static_cast<std::size_t>(pos)] = a;
        enumerate_monomials(d, n - a, cur, pos + 1, out);
    }
}

SparseFF zero_map(std::size_t rows, std::size_t cols) { return SparseFF(rows, cols); }

bool same(const SparseFF& a, const SparseFF& b) { return a.rows == b.rows && a.cols == b.cols && a.images == b.images; }

SparseFF linear_combination(const std::vector<std::pair<FFElem, const SparseFF*>>& terms, std::size_t rows, std::size_t cols) {
    SparseFF out(rows, cols);
    SparseAccumulator<FFElem> acc(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (const auto& [c, m] : terms) acc.add(m->images[i], c);
        out.images[i] = acc.take();
    }
    return out;
}

/// Free module on generators of given degrees: F_n = sum_b e_b R_{n - deg b}.
struct FreeLayout {
    const SkewAlgebra* alg = nullptr;
    std::vector<int> degrees;

    std::size_t block(int n, std::size_t b) const {
        const int k = n - degrees[b];
        return k < 0 ? 0 : alg->dim(k);
    }
    std::size_t offset(int n, std::size_t b) const {
        std::size_t off = 0;
        for (std::size_t c = 0; c < b; ++c) off += block(n, c);
        return off;
    }
    std::size_t dim(int n) const { return offset(n, degrees.size()); }

    struct Coord {
        std::size_t b, h;
        std::uint32_t mono;
    };
    Coord decode(int n, std::uint32_t idx) const {
        std::size_t b = 0, rest = idx;
        while (rest >= block(n, b)) rest -= block(n, b++);
        const std::size_t nm = alg->monomials(n - degrees[b]);
        return {b, rest / nm, static_cast<std::uint32_t>(rest % nm)};
    }
    std::uint32_t encode(int n, std::size_t b, std::size_t h, std::uint32_t mono) const {
        return static_cast<std::uint32_t>(offset(n, b) + h * alg->monomials(n - degrees[b]) + mono);
    }
};

SparseVecFF free_times(const FreeLayout& f, int n, const SparseVecFF& u, int j) {
    SparseAccumulator<FFElem> acc(f.dim(n + 1));
    for (const auto& [idx, c] : u) {
        const auto co = f.decode(n, idx);
        const int k = n - f.degrees[co.b];
        acc.add(f.encode(n + 1, co.b, co.h, f.alg->times(k, co.mono, j)), c);
    }
    return acc.take();
}

SparseVecFF free_act(const FreeLayout& f, int n, const SparseVecFF& u, std::size_t g) {
    const FiniteGroup& H = *f.alg->model().H;
    SparseAccumulator<FFElem> acc(f.dim(n));
    for (const auto& [idx, c] : u) {
        const auto co = f.decode(n, idx);
        const int k = n - f.degrees[co.b];
        const std::size_t hg = H.mul(co.h, g);
        for (const auto& [mono, x] : f.alg->sym_image(g, k, co.mono)) acc.add(f.encode(n, co.b, hg, mono), c * x);
    }
    return acc.take();
}

void build_element_actions(GradedModule& m) {
    const FiniteGroup& H = *m.model().H;
    const FieldSpec& k = m.model().V.field();
    m.elem_act.assign(m.dims.size(), {});
    for (std::size_t i = 0; i < m.dims.size(); ++i) {
        auto& acts = m.elem_act[i];
        acts.resize(H.order());
        acts[0] = SparseFF::identity(m.dims[i], k.one());
        for (std::size_t e = 1; e < H.order(); ++e) {
            const auto [parent, s] = H.parent(e);
            acts[e] = compose(acts[parent], m.h_act[i][s]);
        }
    }
}

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

}  // namespace

// ---------------------------------------------------------------------------

std::shared_ptr<const SkewAlgebra> SkewAlgebra::build(ModelGN model, int top_degree) {
    require(top_degree >= 0, ErrorCode::BadParams, "negative cutoff");
    std::shared_ptr<SkewAlgebra> alg(new SkewAlgebra());
    alg->model_ = std::move(model);
    alg->top_ = top_degree;
    const int d = alg->d();
    const FiniteGroup& H = *alg->model_.H;
    const FieldSpec k = alg->model_.V.field();
    for (int n = 0; n <= top_degree + 1; ++n) {
        std::vector<std::vector<int>> list;
        if (d == 0) {
            if (n == 0) list.emplace_back();
        } else {
            std::vector<int> cur(static_cast<std::size_t>(d));
            enumerate_monomials(d, n, cur, 0, list);
        }
        std::map<std::vector<int>, std::uint32_t> index;
        for (std::uint32_t i = 0; i < list.size(); ++i) index.emplace(list[i], i);
        alg->exps_.push_back(std::move(list));
        alg->index_.push_back(std::move(index));
    }
    for (int n = 0; n <= top_degree; ++n) {
        const auto& list = alg->exps_[static_cast<std::size_t>(n)];
        std::vector<std::uint32_t> up(list.size() * static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < list.size(); ++i)
            for (int j = 0; j < d; ++j) {
                auto e = list[i];
                ++e[static_cast<std::size_t>(j)];
                up[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = alg->index_[static_cast<std::size_t>(n + 1)].at(e);
            }
        alg->up_.push_back(std::move(up));
    }
    alg->sym_.resize(H.order());
    for (std::size_t g = 0; g < H.order(); ++g) {
        const FFMatrix& a = alg->model_.V.matrix(g);
        auto& per_degree = alg->sym_[g];
        per_degree.resize(static_cast<std::size_t>(top_degree) + 1);
        per_degree[0] = {SparseVecFF{{0, k.one()}}};
        for (int n = 1; n <= top_degree; ++n) {
            const auto& list = alg->exps_[static_cast<std::size_t>(n)];
            auto& images = per_degree[static_cast<std::size_t>(n)];
            images.resize(list.size());
            SparseAccumulator<FFElem> acc(list.size());
            for (std::size_t idx = 0; idx < list.size(); ++idx) {
                auto e = list[idx];
                int i = 0;
                while (e[static_cast<std::size_t>(i)] == 0) ++i;
                --e[static_cast<std::size_t>(i)];
                const auto prev = alg->index_[static_cast<std::size_t>(n - 1)].at(e);
                // (x^b x_i)^g = (x^b)^g (x_i)^g, and x_i^g is row i of V(g)
                for (const auto& [mono, c] : per_degree[static_cast<std::size_t>(n - 1)][prev])
                    for (int j = 0; j < d; ++j) {
                        const FFElem& aij = a(i, j);
                        if (aij.is_zero()) continue;
                        acc.add(alg->times(n - 1, mono, j), c * aij);
                    }
                images[idx] = acc.take();
            }
        }
    }
    return alg;
}

std::size_t SkewAlgebra::monomials(int n) const {
    if (n < 0) return 0;
    if (static_cast<std::size_t>(n) < exps_.size()) return exps_[static_cast<std::size_t>(n)].size();
    if (d() == 0) return 0;
    return static_cast<std::size_t>(binomial(n + d() - 1, d() - 1));
}

std::uint32_t SkewAlgebra::monomial_index(const std::vector<int>& exps) const {
    require(exps.size() == static_cast<std::size_t>(d()), ErrorCode::DimMismatch, "monomial has the wrong number of variables");
    int n = 0;
    for (int e : exps) {
        require(e >= 0, ErrorCode::BadParams, "negative exponent");
        n += e;
    }
    require(n <= top_ + 1, ErrorCode::WindowTooSmall, "monomial degree beyond the algebra cutoff");
    return index_[static_cast<std::size_t>(n)].at(exps);
}

const SparseVecFF& SkewAlgebra::sym_image(std::size_t g, int n, std::uint32_t idx) const {
    require(n >= 0 && n <= top_, ErrorCode::WindowTooSmall, "degree beyond the algebra cutoff");
    return sym_[g][static_cast<std::size_t>(n)][idx];
}

AlgebraPtr build_algebra(const ModelGN& model, int top_degree) { return SkewAlgebra::build(model, top_degree); }

int default_cutoff(const ModelGN& model, int span, int guard) {
    const int window = std::max(model.m(), 4) + span;
    return std::max(model.m() * model.d() + span + 2 * guard, window + span + model.d());
}

// ---------------------------------------------------------------------------

GradedModule module_from_presentation(const ModelGN& model, const Presentation& pres, const WindowOptions& opts) {
    const int d = model.d();
    const FiniteGroup& H = *model.H;
    const std::size_t ngens = pres.generator_degrees.size();
    GradedModule m;
    m.presentation = pres;
    m.lo = ngens == 0 ? 0 : *std::min_element(pres.generator_degrees.begin(), pres.generator_degrees.end());
    int top = m.lo;
    for (int deg : pres.generator_degrees) top = std::max(top, deg);
    std::vector<int> rel_degree;
    for (const auto& r : pres.relations) {
        require(!r.terms.empty(), ErrorCode::BadParams, "empty relation");
        int deg = 0;
        for (std::size_t t = 0; t < r.terms.size(); ++t) {
            const auto& term = r.terms[t];
            require(term.gen < ngens, ErrorCode::BadParams, "relation refers to a missing generator");
            require(term.h < H.order(), ErrorCode::BadParams, "relation refers to a missing group element");
            require(term.monomial.size() == static_cast<std::size_t>(d), ErrorCode::BadParams, "monomial has the wrong length");
            int k = pres.generator_degrees[term.gen];
            for (int e : term.monomial) {
                require(e >= 0, ErrorCode::BadParams, "negative exponent");
                k += e;
            }
            require(t == 0 || k == deg, ErrorCode::BadParams, "relation is not homogeneous");
            deg = k;
        }
        rel_degree.push_back(deg);
        top = std::max(top, deg);
    }
    m.span = top - m.lo;
    const int cutoff = opts.cutoff.value_or(default_cutoff(model, m.span, opts.guard));
    require(cutoff >= 0, ErrorCode::BadParams, "negative cutoff");
    m.hi = m.lo + cutoff;
    require(top <= m.hi, ErrorCode::WindowTooSmall,
            "presentation degree " + std::to_string(top) + " exceeds the window end " + std::to_string(m.hi));
    m.algebra = build_algebra(model, m.hi - m.lo);

    FreeLayout free{m.algebra.get(), pres.generator_degrees};
    const auto nd = static_cast<std::size_t>(m.hi - m.lo + 1);
    std::vector<SparseEchelon<FFElem>> rel;
    rel.reserve(nd);
    for (int n = m.lo; n <= m.hi; ++n) {
        SparseEchelon<FFElem> ech(free.dim(n));
        if (n > m.lo)
            for (const auto& u : rel.back().rows())
                for (int j = 0; j < d; ++j) ech.insert(free_times(free, n - 1, u, j));
        for (std::size_t r = 0; r < pres.relations.size(); ++r) {
            if (rel_degree[r] != n) continue;
            SparseAccumulator<FFElem> acc(free.dim(n));
            for (const auto& term : pres.relations[r].terms) {
                const auto mono = m.algebra->monomial_index(term.monomial);
                acc.add(free.encode(n, term.gen, term.h, mono), term.coeff.attach(model.V.field().tables()));
            }
            const SparseVecFF vec = acc.take();
            for (std::size_t g = 0; g < H.order(); ++g) ech.insert(free_act(free, n, vec, g));
        }
        rel.push_back(std::move(ech));
    }

    // quotient bases: non-pivot columns
    std::vector<std::vector<std::int64_t>> position(nd);
    std::vector<std::vector<std::uint32_t>> basis(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        position[i].assign(rel[i].dim(), -1);
        for (std::uint32_t c = 0; c < rel[i].dim(); ++c)
            if (!rel[i].is_pivot(c)) {
                position[i][c] = static_cast<std::int64_t>(basis[i].size());
                basis[i].push_back(c);
            }
        m.dims.push_back(basis[i].size());
    }
    auto coordinates = [&](std::size_t i, const SparseVecFF& v) {
        SparseVecFF out;
        for (const auto& [c, x] : rel[i].reduce(v)) out.emplace_back(static_cast<std::uint32_t>(position[i][c]), x);
        return out;
    };
    const FFElem one = model.V.field().one();
    m.h_act.resize(nd);
    m.v_act.resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        const int n = m.lo + static_cast<int>(i);
        for (std::size_t s = 0; s < H.generators().size(); ++s) {
            SparseFF act(m.dims[i], m.dims[i]);
            for (std::size_t a = 0; a < basis[i].size(); ++a)
                act.images[a] = coordinates(i, free_act(free, n, {{basis[i][a], one}}, H.generator_element(s)));
            m.h_act[i].push_back(std::move(act));
        }
        if (n == m.hi) continue;
        for (int j = 0; j < d; ++j) {
            SparseFF act(m.dims[i], m.dims[i + 1]);
            for (std::size_t a = 0; a < basis[i].size(); ++a)
                act.images[a] = coordinates(i + 1, free_times(free, n, {{basis[i][a], one}}, j));
            m.v_act[i].push_back(std::move(act));
        }
    }
    build_element_actions(m);
    validate_module(m);
    return m;
}

GradedModule module_from_rep(const ModelGN& model, const Rep& a, int degree, const WindowOptions& opts) {
    require(a.group() == model.H && a.field() == model.V.field(), ErrorCode::DimMismatch,
            "representation is not over the model's group and field");
    GradedModule m;
    m.lo = degree;
    m.span = 0;
    m.hi = degree + opts.cutoff.value_or(default_cutoff(model, 0, opts.guard));
    m.algebra = build_algebra(model, m.hi - m.lo);
    const auto nd = static_cast<std::size_t>(m.hi - m.lo + 1);
    m.dims.assign(nd, 0);
    m.dims[0] = static_cast<std::size_t>(a.dim());
    m.h_act.resize(nd);
    m.v_act.resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        for (const auto& g : a.generators())
            m.h_act[i].push_back(i == 0 ? to_sparse(g) : zero_map(0, 0));
        if (i + 1 < nd)
            for (int j = 0; j < model.d(); ++j) m.v_act[i].push_back(zero_map(m.dims[i], m.dims[i + 1]));
    }
    build_element_actions(m);
    validate_module(m);
    return m;
}

GradedModule shifted(const GradedModule& m, int a) {
    GradedModule out = m;
    out.lo -= a;
    out.hi -= a;
    if (out.presentation)
        for (int& deg : out.presentation->generator_degrees) deg -= a;
    return out;
}

void validate_module(const GradedModule& m) {
    const FiniteGroup& H = *m.model().H;
    const int d = m.model().d();
    for (int n = m.lo; n <= m.hi; ++n) {
        const auto i = static_cast<std::size_t>(n - m.lo);
        for (std::size_t e = 0; e < H.order(); ++e)
            for (std::size_t s = 0; s < H.generators().size(); ++s)
                require(same(compose(m.elem_act[i][e], m.h_act[i][s]), m.elem_act[i][H.mul(e, H.generator_element(s))]),
                        ErrorCode::Internal, "H-action violates a group relation in degree " + std::to_string(n));
        if (n == m.hi) continue;
        for (std::size_t s = 0; s < H.generators().size(); ++s) {
            const FFMatrix& a = m.model().V.generators()[s];
            for (int j = 0; j < d; ++j) {
                // m v_j s = m s v_j^s
                std::vector<std::pair<FFElem, const SparseFF*>> terms;
                std::vector<SparseFF> parts;
                parts.reserve(static_cast<std::size_t>(d));
                for (int l = 0; l < d; ++l) parts.push_back(compose(m.h_act[i][s], m.v_act[i][static_cast<std::size_t>(l)]));
                for (int l = 0; l < d; ++l)
                    if (!a(j, l).is_zero()) terms.emplace_back(a(j, l), &parts[static_cast<std::size_t>(l)]);
                const SparseFF rhs = linear_combination(terms, m.dims[i], m.dims[i + 1]);
                require(same(compose(m.v_act[i][static_cast<std::size_t>(j)], m.h_act[i + 1][s]), rhs), ErrorCode::Internal,
                        "twist law fails in degree " + std::to_string(n));
            }
        }
        if (n + 1 == m.hi) continue;
        for (int j = 0; j < d; ++j)
            for (int l = j + 1; l < d; ++l)
                require(same(compose(m.v_act[i][static_cast<std::size_t>(j)], m.v_act[i + 1][static_cast<std::size_t>(l)]),
                             compose(m.v_act[i][static_cast<std::size_t>(l)], m.v_act[i + 1][static_cast<std::size_t>(j)])),
                        ErrorCode::Internal, "V-actions do not commute in degree " + std::to_string(n));
    }
}

// ---------------------------------------------------------------------------

KoszulDegree koszul_degree(const GradedModule& m, int n) {
    const int d = m.model().d();
    KoszulDegree out;
    out.n = n;
    std::vector<std::vector<std::vector<int>>> sets(static_cast<std::size_t>(d) + 1);
    std::vector<std::map<std::vector<int>, std::uint32_t>> set_index(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        sets[static_cast<std::size_t>(j)] = subsets(d, j);
        for (std::uint32_t i = 0; i < sets[static_cast<std::size_t>(j)].size(); ++i)
            set_index[static_cast<std::size_t>(j)].emplace(sets[static_cast<std::size_t>(j)][i], i);
        out.dims.push_back(m.dim(n - j) * sets[static_cast<std::size_t>(j)].size());
    }
    out.diffs.resize(static_cast<std::size_t>(d) + 1);
    for (int j = 1; j <= d; ++j) {
        const auto J = static_cast<std::size_t>(j);
        SparseFF phi(out.dims[J], out.dims[J - 1]);
        const std::size_t cj = sets[J].size(), cj1 = sets[J - 1].size();
        for (std::size_t a = 0; a < m.dim(n - j); ++a)
            for (std::size_t s = 0; s < cj; ++s) {
                const auto& subset = sets[J][s];
                SparseVecFF row;
                for (int l = 0; l < j; ++l) {
                    std::vector<int> rest = subset;
                    rest.erase(rest.begin() + l);
                    const std::uint32_t r = set_index[J - 1].at(rest);
                    const auto& image = m.times(n - j, subset[static_cast<std::size_t>(l)]).images[a];
                    for (const auto& [b, x] : image)
                        row.emplace_back(static_cast<std::uint32_t>(b * cj1 + r), l % 2 == 0 ? x : -x);
                }
                std::sort(row.begin(), row.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
                phi.images[a * cj + s] = std::move(row);
            }
        out.diffs[J] = std::move(phi);
    }
    for (int j = 2; j <= d; ++j) {
        const SparseFF zero = compose(out.diffs[static_cast<std::size_t>(j)], out.diffs[static_cast<std::size_t>(j - 1)]);
        for (const auto& row : zero.images)
            require(row.empty(), ErrorCode::Internal, "Koszul differentials do not square to zero");
    }
    return out;
}

std::vector<KoszulDegree> koszul_complex(const GradedModule& m) {
    std::vector<KoszulDegree> out;
    for (int n = m.lo; n <= m.hi; ++n) out.push_back(koszul_degree(m, n));
    return out;
}

namespace {

std::vector<SparseVecFF> kernel_of(const SparseFF& phi, const FFElem& one) {
    SparseEchelon<FFElem> ech(phi.cols);
    std::vector<SparseVecFF> tags, kernel;
    SparseAccumulator<FFElem> acc(phi.rows);
    for (std::size_t i = 0; i < phi.rows; ++i) {
        auto red = ech.reduce_tracked(phi.images[i]);
        acc.add(static_cast<std::uint32_t>(i), one);
        for (const auto& [r, c] : red.used) acc.add(tags[r], -c);
        SparseVecFF tag = acc.take();
        if (red.remainder.empty()) {
            kernel.push_back(std::move(tag));
            continue;
        }
        const FFElem inv = red.remainder.front().second.inverse();
        for (auto& [j, x] : tag) x *= inv;
        ech.insert_reduced(std::move(red.remainder));
        tags.push_back(std::move(tag));
    }
    return kernel;
}

}  // namespace

LaurentPoly TorTable::series(int j, std::size_t g, const CharacterContext& ctx) const {
    LaurentPoly out(ctx.m);
    for (const auto& piece : pieces)
        if (piece.j == j) out += LaurentPoly::monomial(ctx.m, piece.n, ctx.value(piece.action.matrix(g)));
    return out;
}

DegreeCharacters degree_characters(const GradedModule& m) {
    DegreeCharacters out;
    out.orbits = m.model().orbits();
    const CharacterContext& ctx = m.model().context();
    for (int n = m.lo; n <= m.hi; ++n) {
        std::vector<CycloNum> row;
        for (std::size_t b = 0; b < out.orbits.size(); ++b)
            row.push_back(m.dim(n) == 0 ? CycloNum(0) : ctx.value(m.action(n, out.orbits.representative(b))));
        out.values.push_back(std::move(row));
    }
    return out;
}

TorTable graded_tor(const GradedModule& m, const DegreeCharacters& chars) {
    const ModelGN& model = m.model();
    const FiniteGroup& H = *model.H;
    const int d = model.d();
    const FieldSpec& k = model.V.field();
    const CharacterContext& ctx = model.context();
    TorTable out;
    out.d = d;
    out.lo = m.lo;
    out.hi = m.hi;
    const auto nd = static_cast<std::size_t>(m.hi - m.lo + 1);
    out.dims.assign(static_cast<std::size_t>(d) + 1, std::vector<std::size_t>(nd, 0));

    std::vector<std::vector<FFMatrix>> ext(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j)
        for (const auto& g : model.V.generators()) ext[static_cast<std::size_t>(j)].push_back(attach(exterior_power_matrix(g, j), k));

    for (int n = m.lo; n <= m.hi; ++n) {
        const KoszulDegree kd = koszul_degree(m, n);
        std::vector<SparseEchelon<FFElem>> image;
        for (int j = 0; j <= d; ++j) {
            SparseEchelon<FFElem> ech(kd.dims[static_cast<std::size_t>(j)]);
            if (j < d)
                for (const auto& row : kd.diffs[static_cast<std::size_t>(j + 1)].images) ech.insert(row);
            image.push_back(std::move(ech));
        }
        std::vector<std::size_t> ranks;
        for (const auto& ech : image) ranks.push_back(ech.rank());
        for (int j = 0; j <= d; ++j) {
            const auto J = static_cast<std::size_t>(j);
            const std::size_t rank_in = j > 0 ? ranks[J - 1] : 0;
            const std::size_t dim = kd.dims[J] - rank_in - ranks[J];
            out.dims[J][static_cast<std::size_t>(n - m.lo)] = dim;
            if (dim == 0) continue;
            std::vector<SparseVecFF> cycles;
            if (j == 0)
                for (std::uint32_t i = 0; i < kd.dims[0]; ++i) cycles.push_back({{i, k.one()}});
            else
                cycles = kernel_of(kd.diffs[J], k.one());
            auto& ech = image[J];
            std::vector<long> homology_rows;
            std::vector<std::int64_t> slot(kd.dims[J] + cycles.size(), -1);
            for (const auto& z : cycles) {
                const long r = ech.insert(z);
                if (r < 0) continue;
                slot[static_cast<std::size_t>(r)] = static_cast<std::int64_t>(homology_rows.size());
                homology_rows.push_back(r);
            }
            require(homology_rows.size() == dim, ErrorCode::Internal, "homology dimension disagrees with ranks");
            const std::size_t cset = subsets(d, j).size();
            std::vector<FFMatrix> gens;
            for (std::size_t s = 0; s < H.generators().size(); ++s) {
                FFMatrix act(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
                act.setConstant(k.zero());
                const SparseFF& ms = m.h_act[static_cast<std::size_t>(n - j - m.lo)][s];
                const FFMatrix& ls = ext[J][s];
                for (std::size_t h = 0; h < dim; ++h) {
                    SparseAccumulator<FFElem> acc(kd.dims[J]);
                    for (const auto& [idx, c] : ech.rows()[static_cast<std::size_t>(homology_rows[h])]) {
                        const std::size_t a = idx / cset, sub = idx % cset;
                        for (const auto& [a2, x] : ms.images[a])
                            for (std::size_t sub2 = 0; sub2 < cset; ++sub2) {
                                const FFElem& y = ls(static_cast<Eigen::Index>(sub), static_cast<Eigen::Index>(sub2));
                                if (!y.is_zero()) acc.add(static_cast<std::uint32_t>(a2 * cset + sub2), c * x * y);
                            }
                    }
                    const auto red = ech.reduce_tracked(acc.take());
                    require(red.remainder.empty(), ErrorCode::Internal, "cycles are not H-stable");
                    for (const auto& [r, c] : red.used)
                        if (slot[r] >= 0) act(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(slot[r])) = c;
                }
                gens.push_back(std::move(act));
            }
            out.pieces.push_back({j, n, Rep::make(model.H, k, std::move(gens), static_cast<int>(dim))});
        }
    }
    std::sort(out.pieces.begin(), out.pieces.end(),
              [](const TorPiece& a, const TorPiece& b) { return std::pair(a.j, a.n) < std::pair(b.j, b.n); });

    // stabilization certificate
    TorCertificate& cert = out.certificate;
    cert.window = std::max(model.m(), 4) + m.span;
    cert.zero_from = m.hi - cert.window + 1;
    require(cert.zero_from > m.lo, ErrorCode::NotStabilized,
            "window [" + std::to_string(m.lo) + ", " + std::to_string(m.hi) + "] is shorter than the certificate window " +
                std::to_string(cert.window) + "; enlarge the cutoff");
    for (int j = 0; j <= d; ++j)
        for (int n = cert.zero_from; n <= m.hi; ++n)
            require(out.dims[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - m.lo)] == 0, ErrorCode::NotStabilized,
                    "Tor_" + std::to_string(j) + " is nonzero in degree " + std::to_string(n) + "; enlarge the cutoff");

    const auto& orbits = chars.orbits;
    cert.euler_ok = true;
    for (std::size_t b = 0; b < orbits.size(); ++b) {
        const std::size_t g = orbits.representative(b);
        std::vector<CycloNum> lam;
        for (int j = 0; j <= d; ++j) lam.push_back(ctx.value(exterior_power_matrix(model.V.matrix(g), j)));
        LaurentPoly lhs(ctx.m), series(ctx.m);
        for (int j = 0; j <= d; ++j) {
            const LaurentPoly t = out.series(j, g, ctx);
            if (j % 2 == 0) lhs += t;
            else lhs -= t;
        }
        for (int n = m.lo; n <= m.hi; ++n) {
            series.set_coeff(n, chars.values[static_cast<std::size_t>(n - m.lo)][b]);
            CycloNum terms(0);
            for (int j = 0; j <= d; ++j) {
                if (n - j < m.lo) continue;
                const CycloNum v = chars.values[static_cast<std::size_t>(n - j - m.lo)][b] * lam[static_cast<std::size_t>(j)];
                terms += j % 2 == 0 ? v : -v;
            }
            if (terms != lhs.coeff(n)) cert.euler_ok = false;
        }
        const LaurentPoly rhs = (series * psi(model, g)).truncated(m.hi);
        const LaurentPoly diff = lhs - rhs;
        for (const auto& [deg, c] : diff.terms())
            if (deg <= m.hi) ++cert.residual;
    }
    require(cert.euler_ok, ErrorCode::Internal, "Euler characteristic of the Koszul complex differs from its homology");
    cert.identity_ok = cert.residual == 0;
    require(cert.identity_ok, ErrorCode::NotStabilized, "cleared identity fails on the computed window");
    return out;
}

TorTable graded_tor(const GradedModule& m) { return graded_tor(m, degree_characters(m)); }

LaurentPoly zeta_series(const GradedModule& m, std::size_t g) {
    const CharacterContext& ctx = m.model().context();
    LaurentPoly out(ctx.m);
    for (int n = m.lo; n <= m.hi; ++n)
        if (m.dim(n) > 0) out.set_coeff(n, ctx.value(m.action(n, g)));
    return out;
}

ZetaRational zeta_rational(const LaurentPoly& series, const GradedModule& m, int guard) {
    const int mm = m.model().m();
    ZetaRational out;
    out.f = reconstruct_rational(series, m.hi, mm, m.model().d(), guard);
    require(out.f.expand(m.hi) == series.truncated(m.hi), ErrorCode::InsufficientData,
            "reconstructed function does not re-expand to the series");
    out.verified_through = m.hi;
    out.tail = out.f.num.is_zero() ? m.hi - m.lo + 1 : m.hi - out.f.num.max_degree();
    return out;
}

ZetaRational zeta_rational(const GradedModule& m, std::size_t g, int guard) { return zeta_rational(zeta_series(m, g), m, guard); }

int dimension(const GradedModule& m, int guard) { return pole_order_at_one(zeta_rational(m, 0, guard).f); }

ModuleAnalysis analyze(const GradedModule& m, int guard) {
    ModuleAnalysis a;
    a.chars = degree_characters(m);
    a.tor = graded_tor(m, a.chars);
    const ModelGN& model = m.model();
    const CharacterContext& ctx = model.context();
    for (std::size_t b = 0; b < a.chars.orbits.size(); ++b) {
        const std::size_t g = a.chars.orbits.representative(b);
        LaurentPoly series(ctx.m);
        for (int n = m.lo; n <= m.hi; ++n) series.set_coeff(n, a.chars.values[static_cast<std::size_t>(n - m.lo)][b]);
        a.rational.push_back(zeta_rational(series, m, guard));
        a.zeta.push_back(std::move(series));
        a.psi.push_back(psi(model, g));
        a.centralizer_dims.push_back(centralizer_dim(model, g));
        CycloNum value(0);
        for (int j = 0; j <= model.d(); ++j) {
            const CycloNum total = a.tor.series(j, g, ctx).at_one();
            value += j % 2 == 0 ? total : -total;
        }
        a.rho.push_back(value);
    }
    a.dimension = pole_order_at_one(a.rational[0].f);
    return a;
}

CycloNum rho(const GradedModule& m, std::size_t g) {
    const TorTable tor = graded_tor(m);
    const CharacterContext& ctx = m.model().context();
    CycloNum value(0);
    for (int j = 0; j <= m.model().d(); ++j) {
        const CycloNum total = tor.series(j, g, ctx).at_one();
        value += j % 2 == 0 ? total : -total;
    }
    return value;
}

KeyFormulaReport verify_key_formula(const GradedModule& m, const ModuleAnalysis& a, std::size_t orbit) {
    const ModelGN& model = m.model();
    const CharacterContext& ctx = model.context();
    KeyFormulaReport out;
    out.element = a.chars.orbits.representative(orbit);
    LaurentPoly tor_sum(ctx.m);
    for (int j = 0; j <= model.d(); ++j) {
        const LaurentPoly t = a.tor.series(j, out.element, ctx);
        if (j % 2 == 0) tor_sum += t;
        else tor_sum -= t;
    }
    out.lhs = tor_sum * LaurentPoly::one_minus_t_pow(ctx.m, ctx.m, a.dimension);
    const RatFuncT& f = a.rational[orbit].f;
    if (f.den_exp > a.dimension) return out;
    const LaurentPoly u = f.num * LaurentPoly::one_minus_t_pow(ctx.m, ctx.m, a.dimension - f.den_exp);
    out.rhs = u * a.psi[orbit];
    out.ok = out.lhs == out.rhs;
    return out;
}

MainFormulaReport verify_main_formula(const GradedModule&, const ModuleAnalysis& a, std::size_t orbit) {
    MainFormulaReport out;
    out.element = a.chars.orbits.representative(orbit);
    out.rho = a.rho[orbit];
    out.value = eval_at_one(a.rational[orbit].f, a.psi[orbit]);
    out.ok = out.rho == out.value;
    return out;
}

VanishingReport vanishing_check(const GradedModule&, const ModuleAnalysis& a) {
    VanishingReport out;
    out.dimension = a.dimension;
    for (std::size_t b = 0; b < a.chars.orbits.size(); ++b) {
        VanishingEntry e;
        e.element = a.chars.orbits.representative(b);
        e.centralizer_dim = a.centralizer_dims[b];
        e.rho = a.rho[b];
        e.forced = e.centralizer_dim > a.dimension;
        e.ok = !e.forced || e.rho.is_zero();
        out.ok = out.ok && e.ok;
        out.entries.push_back(std::move(e));
    }
    return out;
}

RankReport rank_harness(const ModelGN& model, const std::vector<const ModuleAnalysis*>& modules, int i) {
    RankReport out;
    out.i = i;
    for (std::size_t k = 0; k < modules.size(); ++k) {
        const auto* a = modules[k];
        require(a->dimension <= i, ErrorCode::DimensionTooLarge,
                "module " + std::to_string(k) + " has dimension " + std::to_string(a->dimension) + " > " + std::to_string(i));
        out.dimensions.push_back(a->dimension);
        out.values.push_back(a->rho);
    }
    out.bound = static_cast<int>(s_filtration(model, i).count());
    const std::size_t cols = modules.empty() ? 0 : modules.front()->rho.size();
    int current = 0;
    CycloMatrix rows(0, static_cast<Eigen::Index>(cols));
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        CycloMatrix next(rows.rows() + 1, rows.cols());
        next.topRows(rows.rows()) = rows;
        for (std::size_t c = 0; c < cols; ++c) next(rows.rows(), static_cast<Eigen::Index>(c)) = out.values[k][c];
        const int r = static_cast<int>(rank(next));
        if (r > current) {
            current = r;
            rows = std::move(next);
            out.witnesses.push_back(k);
        }
    }
    out.rank = current;
    out.ok = out.rank <= out.bound;
    if (out.rank != out.bound) out.witnesses.clear();
    return out;
}

}  // namespace bk
