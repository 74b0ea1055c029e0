#include "doctest.h"

#include "bk/error.hpp"
#include "bk/fixtures.hpp"
#include "bk/reps.hpp"

#include "oracle.hpp"
#include "support.hpp"

using namespace bk;
using testing::poly;

namespace {

std::size_t elem(const FiniteGroup& g, const Perm& p) { return g.index_of(p).value(); }

/// Companion matrix of a monic cubic in the row-vector convention.
FFMatrix companion(const FieldSpec& k, const std::vector<int>& low) {
    FFMatrix c = FFMatrix::Constant(3, 3, k.zero());
    c(0, 1) = k.one();
    c(1, 2) = k.one();
    for (int j = 0; j < 3; ++j) c(2, j) = -k.from_int(low[static_cast<std::size_t>(j)]);
    return c;
}

LaurentPoly from_longs(const std::vector<long>& c) { return poly(c); }

}  // namespace

TEST_CASE("brauer characters of small representations") {
    const auto c2 = cyclic_group(2);
    const FieldSpec f3 = make_field(3, 1);
    const auto g = c2->generator_element(0);

    const BrauerChar triv = brauer_character(trivial_rep(c2, f3, 3), 3);
    CHECK(triv.at(0) == CycloNum(3));
    CHECK(triv.at(g) == CycloNum(3));

    const Rep reg = Rep::make(c2, f3, {testing::matrix(f3, 2, 2, {0, 1, 1, 0})});
    const BrauerChar phi = brauer_character(reg, 3);
    CHECK(phi.at(0) == CycloNum(2));
    CHECK(phi.at(g) == CycloNum(0));

    const auto c7 = cyclic_group(7);
    const FieldSpec f2 = make_field(2, 1);
    const BrauerChar cubic = brauer_character(Rep::make(c7, f2, {companion(f2, {1, 1, 0})}), 2);
    const CycloNum expected = CycloNum::zeta(7, 1) + CycloNum::zeta(7, 2) + CycloNum::zeta(7, 4);
    CHECK(cubic.at(c7->generator_element(0)) == expected);
    CHECK(cubic.at(c7->pow(c7->generator_element(0), 3)) == expected.galois(3));
}

TEST_CASE("representation relations are checked") {
    const auto c2 = cyclic_group(2);
    const FieldSpec f3 = make_field(3, 1);
    try {
        Rep::make(c2, f3, {testing::diagonal(f3, {2, 2, 1}).topLeftCorner(2, 3)});
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimMismatch);
    }
    try {
        Rep::make(cyclic_group(3), f3, {testing::matrix(f3, 1, 1, {2})});
        FAIL("expected BadParams");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadParams);
    }
}

TEST_CASE("tensor, sums and exterior powers") {
    const auto c2 = cyclic_group(2);
    const auto g = c2->generator_element(0);
    const FieldSpec f3 = make_field(3, 1);
    const Rep sign = Rep::make(c2, f3, {testing::diagonal(f3, {-1})});
    CHECK(brauer_character(tensor(sign, sign), 3).at(g) == CycloNum(1));
    const Rep v = Rep::make(c2, f3, {testing::diagonal(f3, {-1, -1})});
    const Rep wedge = exterior_power(v, 2);
    CHECK(wedge.dim() == 1);
    CHECK(brauer_character(wedge, 3).at(g) == CycloNum(1));
    CHECK(exterior_power(v, 0).dim() == 1);
    CHECK(brauer_character(exterior_power(v, 0), 3).at(g) == CycloNum(1));
    CHECK(brauer_character(direct_sum(sign, v), 3).at(g) == CycloNum(-3));
    CHECK(subsets(4, 2).size() == 6);

    const std::vector<int> signs = {-1, 1, -1, -1, 1};
    const FFMatrix a = testing::diagonal(f3, signs);
    for (int j = 0; j <= 5; ++j) {
        const FFMatrix w = exterior_power_matrix(a, j);
        CHECK(w.rows() == oracle::binomial(5, j));
        FFElem trace = f3.zero();
        for (Eigen::Index i = 0; i < w.rows(); ++i) trace += w(i, i);
        CHECK(trace == f3.from_int(oracle::wedge_trace(signs, j)));
    }
}

TEST_CASE("psi and centralizer dimensions") {
    const ModelGN s3 = s3_reflection_model(3);
    const std::size_t t = elem(*s3.H, {1, 0, 2});
    CHECK(psi(s3, t) == from_longs({1, 0, -1}));
    CHECK(psi(s3, 0) == LaurentPoly::one_minus_t_pow(1, 1, 2));
    CHECK(centralizer_dim(s3, t) == 1);

    const ModelGN scalar = c2_scalar_model(3, 3);
    CHECK(centralizer_dim(scalar, 1) == 0);
    CHECK(centralizer_dim(scalar, 0) == 2);

    for (int r : {1, 2, 3}) {
        const ModelGN h = heisenberg_model(r, 3, 3);
        std::vector<int> signs(static_cast<std::size_t>(2 * r), -1);
        signs.push_back(1);
        CHECK(psi(h, 1) == from_longs(oracle::char_poly_reversed(signs)));
        for (int j = 0; j <= 2 * r + 1; ++j)
            CHECK(psi(h, 1).coeff(j) == CycloNum((j % 2 ? -1 : 1) * oracle::wedge_trace(signs, j)));
        CHECK(centralizer_dim(h, 1) == 1);
        CHECK(centralizer_dim(h, 0) == 2 * r + 1);
    }
}

TEST_CASE("centralizer filtration") {
    const ModelGN h = heisenberg_model(1, 3, 3);
    const std::vector<std::size_t> expected = {0, 1, 1, 2};
    for (int i = 0; i <= 3; ++i) CHECK(s_filtration(h, i).count() == expected[static_cast<std::size_t>(i)]);
    // only the identity has a full-dimensional centralizer
    CHECK(s_filtration(h, 3).radical.size() == 1);

    const ModelGN scalar = c2_scalar_model(5, 5);
    const SFiltration s0 = s_filtration(scalar, 0);
    CHECK(s0.count() == 1);
    CHECK(s0.orbits.representative(s0.selected.front()) != scalar.H->identity());
}

TEST_CASE("induced class functions") {
    const auto s3 = symmetric_group(3);
    const std::size_t t = elem(*s3, {1, 0, 2});
    const std::size_t t2 = elem(*s3, {0, 2, 1});
    const std::size_t c = elem(*s3, {1, 2, 0});
    const Subgroup h = subgroup_closure(*s3, {t});

    ClassFunction ind{s3, std::vector<CycloNum>(6, CycloNum(0))};
    ind.values[t] = 1;
    const ClassFunction out = induce_class_function(ind, h);
    CHECK(out.values[t] == CycloNum(1));
    CHECK(out.values[t2] == CycloNum(1));
    CHECK(out.values[0] == CycloNum(0));
    CHECK(out.values[c] == CycloNum(0));

    ClassFunction one{s3, std::vector<CycloNum>(6, CycloNum(0))};
    for (auto x : h) one.values[x] = 1;
    CHECK(induce_class_function(one, h).values[0] == CycloNum(3));

    ClassFunction any{s3, {}};
    for (std::size_t x = 0; x < 6; ++x) any.values.push_back(CycloNum(static_cast<int>(s3->element_order(x))));
    std::vector<std::size_t> all(6);
    std::iota(all.begin(), all.end(), 0);
    CHECK(induce_class_function(any, all).values == any.values);
}

TEST_CASE("character span ranks") {
    const auto s3 = symmetric_group(3);
    const FieldSpec f3 = make_field(3, 1);
    std::vector<FFMatrix> sign_gens;
    for (std::size_t i = 0; i < s3->generators().size(); ++i) {
        const auto& gperm = s3->generators()[i];
        const bool odd = oracle::perm_order(gperm) == 2;
        sign_gens.push_back(testing::diagonal(f3, {odd ? -1 : 1}));
    }
    const std::vector<BrauerChar> s3_chars = {brauer_character(trivial_rep(s3, f3), 3),
                                              brauer_character(Rep::make(s3, f3, sign_gens), 3)};
    CHECK(char_span_rank(s3_chars, galois_orbits(*s3, 3, 3)) == 2);
    CHECK(char_span_rank({s3_chars.front()}, galois_orbits(*s3, 3, 3)) == 1);

    const auto c7 = cyclic_group(7);
    const FieldSpec f2 = make_field(2, 1);
    const std::vector<BrauerChar> c7_chars = {brauer_character(trivial_rep(c7, f2), 2),
                                              brauer_character(Rep::make(c7, f2, {companion(f2, {1, 1, 0})}), 2),
                                              brauer_character(Rep::make(c7, f2, {companion(f2, {1, 0, 1})}), 2)};
    CHECK(char_span_rank(c7_chars, galois_orbits(*c7, 2, 2)) == 3);
}

TEST_CASE("brauer characters are additive on extensions") {
    const auto c2 = cyclic_group(2);
    const auto g = c2->generator_element(0);
    const FieldSpec f3 = make_field(3, 1);
    // e1 spans a trivial submodule, the quotient is the sign
    const Rep ext = Rep::make(c2, f3, {testing::matrix(f3, 2, 2, {2, 1, 0, 1})});
    CHECK(brauer_character(ext, 3).at(g) == CycloNum(0));
    CHECK(brauer_character(ext, 3).at(0) == CycloNum(2));
}

TEST_CASE("brauer characters survive extension of scalars") {
    const auto c7 = cyclic_group(7);
    const FieldSpec f2 = make_field(2, 1);
    const FieldSpec f8 = make_field(2, 3);
    const Rep small = Rep::make(c7, f2, {companion(f2, {1, 1, 0})});
    const BrauerChar base = brauer_character(small, 2);
    const FieldEmbedding emb = find_embedding(f2, f8);
    const Rep big = Rep::make(c7, f8, {apply(emb, small.generators().front())});
    const CharacterContext ctx = CharacterContext::compatible(ModelGN::make(small).context(), f8);
    const BrauerChar lifted = brauer_character(big, 2, ctx);
    for (const auto& [x, v] : base.values) CHECK(lifted.at(x) == v);
}

TEST_CASE("induced characters match induced modules") {
    const auto s3 = symmetric_group(3);
    const FieldSpec f3 = make_field(3, 1);
    const std::size_t t = elem(*s3, {1, 0, 2});
    const auto c2 = FiniteGroup::close(3, {{1, 0, 2}});
    const Rep sign = Rep::make(c2, f3, {testing::diagonal(f3, {-1})});
    const BrauerChar induced = brauer_character(induce(sign, s3), 3);
    CHECK(induce(sign, s3).dim() == 3);

    ClassFunction f{s3, std::vector<CycloNum>(6, CycloNum(0))};
    f.values[0] = 1;
    f.values[t] = -1;
    const ClassFunction ind = induce_class_function(f, subgroup_closure(*s3, {t}));
    for (const auto& [x, v] : induced.values) CHECK(ind.values[x] == v);
    CHECK(induced.at(t) == CycloNum(-1));
}
