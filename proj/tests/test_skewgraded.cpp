#include "doctest.h"

#include "bk/error.hpp"
#include "bk/fixtures.hpp"
#include "bk/skewgraded.hpp"

#include "oracle.hpp"
#include "support.hpp"

using namespace bk;
using testing::poly;

namespace {

std::size_t tor_dim(const TorTable& t, int j, int n) {
    if (n < t.lo || n > t.hi) return 0;
    return t.dims[static_cast<std::size_t>(j)][static_cast<std::size_t>(n - t.lo)];
}

std::size_t total_tor(const TorTable& t, int j) {
    std::size_t s = 0;
    for (auto x : t.dims[static_cast<std::size_t>(j)]) s += x;
    return s;
}

}  // namespace

TEST_CASE("skew algebra dimensions") {
    const ModelGN scalar = c2_scalar_model(3, 3);
    const AlgebraPtr r = build_algebra(scalar, 6);
    CHECK(r->dim(0) == 2);
    CHECK(r->dim(1) == 4);
    CHECK(r->dim(2) == 6);

    const AlgebraPtr cyc = build_algebra(cyclic_model(5, 2, 2), 4);
    CHECK(cyc->dim(0) == 5);
    CHECK(cyc->dim(1) == 0);

    const AlgebraPtr h = build_algebra(heisenberg_model(1, 3, 3), 6);
    for (int n = 0; n <= 6; ++n) {
        CHECK(h->dim(n) == static_cast<std::size_t>(2 * oracle::binomial(n + 2, 2)));
        CHECK(h->monomials(n) == static_cast<std::size_t>(oracle::count_monomials(3, n)));
    }
}

TEST_CASE("modules from presentations") {
    const ModelGN model = heisenberg_model(1, 3, 3);
    const GradedModule free = module_from_presentation(model, free_presentation());
    const GradedModule sym = module_from_presentation(model, sym_presentation(model));
    const GradedModule kh = module_from_presentation(model, group_algebra_presentation(model));
    for (int n = 0; n <= 6; ++n) {
        CHECK(free.dim(n) == free.algebra->dim(n));
        CHECK(sym.dim(n) == static_cast<std::size_t>(oracle::binomial(n + 2, 2)));
        CHECK(kh.dim(n) == (n == 0 ? 2u : 0u));
    }
    validate_module(sym);
    validate_module(kh);
}

TEST_CASE("inhomogeneous relations are rejected") {
    const ModelGN model = dihedral_abelian_model(3, 3);
    Presentation pres = free_presentation();
    pres.relations.push_back({{{0, 0, {0}, FFElem(1)}, {0, 0, {1}, FFElem(1)}}});
    try {
        module_from_presentation(model, pres);
        FAIL("expected BadParams");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadParams);
    }
}

TEST_CASE("koszul complex in rank one") {
    const ModelGN model = dihedral_abelian_model(3, 3);
    const GradedModule sym = module_from_presentation(model, sym_presentation(model));
    for (const KoszulDegree& k : koszul_complex(sym)) {
        CHECK(k.dims[0] == sym.dim(k.n));
        CHECK(k.dims[1] == sym.dim(k.n - 1));
    }
}

TEST_CASE("tor of basic modules") {
    const ModelGN model = heisenberg_model(1, 3, 3);
    const GradedModule free = module_from_presentation(model, free_presentation());
    const TorTable tr = graded_tor(free);
    CHECK(tor_dim(tr, 0, 0) == 2);
    CHECK(total_tor(tr, 0) == 2);
    for (int j = 1; j <= 3; ++j) CHECK(total_tor(tr, j) == 0);
    CHECK(tr.certificate.euler_ok);
    CHECK(tr.certificate.identity_ok);

    const GradedModule sym = module_from_presentation(model, sym_presentation(model));
    const TorTable ts = graded_tor(sym);
    CHECK(total_tor(ts, 0) == 1);
    for (int j = 1; j <= 3; ++j) CHECK(total_tor(ts, j) == 0);

    const GradedModule k = module_from_rep(model, trivial_rep(model.H, model.V.field()), 0);
    const TorTable tk = graded_tor(k);
    for (int j = 0; j <= 3; ++j) {
        CHECK(tor_dim(tk, j, j) == static_cast<std::size_t>(oracle::binomial(3, j)));
        CHECK(total_tor(tk, j) == static_cast<std::size_t>(oracle::binomial(3, j)));
    }
}

TEST_CASE("graded characters of Sym(V)") {
    const ModelGN scalar = c2_scalar_model(3, 3);
    const GradedModule sym = module_from_presentation(scalar, sym_presentation(scalar));
    const LaurentPoly series = zeta_series(sym, 1);
    for (int n = sym.lo; n <= sym.hi; ++n) CHECK(series.coeff(n) == CycloNum(oracle::sym_trace({-1, -1}, n)));
    const ZetaRational z = zeta_rational(sym, 1);
    CHECK(z.f.num == poly({1, -2, 1}));
    CHECK(z.f.den_exp == 2);
    CHECK(z.f.m == 2);

    const ModelGN line = dihedral_abelian_model(3, 3);
    const GradedModule sym1 = module_from_presentation(line, sym_presentation(line));
    const ZetaRational z1 = zeta_rational(sym1, 1);
    CHECK(z1.f.num == poly({1, -1}));
    CHECK(z1.f.den_exp == 1);
}

TEST_CASE("canonical dimension") {
    const ModelGN model = heisenberg_model(1, 3, 3);
    CHECK(dimension(module_from_presentation(model, sym_presentation(model))) == 3);
    CHECK(dimension(module_from_presentation(model, group_algebra_presentation(model))) == 0);
    CHECK(dimension(module_from_presentation(model, sym_quotient_presentation(model, {2}))) == 2);
}

TEST_CASE("rho values") {
    const ModelGN model = c2_scalar_model(3, 3);
    const GradedModule sym = module_from_presentation(model, sym_presentation(model));
    const GradedModule free = module_from_presentation(model, free_presentation());
    CHECK(rho(sym, 0) == CycloNum(1));
    CHECK(rho(sym, 1) == CycloNum(1));
    CHECK(rho(free, 0) == CycloNum(2));
    CHECK(rho(free, 1) == CycloNum(0));

    // finite-dimensional: phi_M(g) Psi(g)(1); the regular module has phi = (2, 0)
    const GradedModule kh = module_from_presentation(model, group_algebra_presentation(model));
    CHECK(rho(kh, 0) == CycloNum(2) * psi(model, 0).at_one());
    CHECK(rho(kh, 1) == CycloNum(0));
    const ModelGN line = dihedral_abelian_model(3, 3);
    const GradedModule sign = module_from_presentation(line, linear_presentation(line, {-1}));
    CHECK(rho(sign, 1) == CycloNum(-2));
    CHECK(rho(sign, 0) == CycloNum(0));
}

TEST_CASE("main and key formulas on a small catalog") {
    const ModelGN model = heisenberg_model(1, 3, 3);
    for (const CatalogModule& cm : example_catalog(ExampleId::parse("heisenberg(1,3,3)")).modules) {
        CAPTURE(cm.name);
        const GradedModule m = build_module(model, cm, {});
        const ModuleAnalysis a = analyze(m);
        for (std::size_t b = 0; b < a.rho.size(); ++b) {
            CHECK(verify_main_formula(m, a, b).ok);
            CHECK(verify_key_formula(m, a, b).ok);
        }
        CHECK(vanishing_check(m, a).ok);
    }
}

TEST_CASE("vanishing when every centralizer is positive-dimensional") {
    const ModelGN model = heisenberg_model(2, 3, 3);
    const GradedModule kh = module_from_presentation(model, group_algebra_presentation(model));
    const ModuleAnalysis a = analyze(kh);
    const VanishingReport r = vanishing_check(kh, a);
    CHECK(r.ok);
    for (const auto& e : r.entries) {
        CHECK(e.forced);
        CHECK(e.rho == CycloNum(0));
    }
}

TEST_CASE("shift law") {
    const ModelGN model = dihedral_abelian_model(5, 5);
    const GradedModule sym = module_from_presentation(model, sym_presentation(model));
    for (int a : {-2, 1, 3}) {
        const GradedModule s = shifted(sym, a);
        for (std::size_t g : {std::size_t{0}, std::size_t{1}}) {
            const LaurentPoly moved = zeta_series(s, g) * LaurentPoly::monomial(1, a, CycloNum(1));
            for (int n = sym.lo; n <= sym.hi; ++n) CHECK(moved.coeff(n) == zeta_series(sym, g).coeff(n));
        }
    }
}

TEST_CASE("rho is unchanged by rescaling relations") {
    const ModelGN model = heisenberg_model(1, 5, 5);
    Presentation pres = sym_quotient_presentation(model, {2});
    Presentation scaled = pres;
    const FieldSpec k = model.V.field();
    for (std::size_t i = 0; i < scaled.relations.size(); ++i)
        for (auto& t : scaled.relations[i].terms) t.coeff = (t.coeff * k.from_int(static_cast<int>(i) + 2)).attach(k.tables());
    const ModuleAnalysis a = analyze(module_from_presentation(model, pres));
    const ModuleAnalysis b = analyze(module_from_presentation(model, scaled));
    CHECK(a.rho == b.rho);
}

TEST_CASE("rank harness") {
    {
        const ModelGN model = dihedral_abelian_model(3, 3);
        const ModuleAnalysis k = analyze(module_from_presentation(model, linear_presentation(model, {1})));
        const ModuleAnalysis s = analyze(module_from_presentation(model, linear_presentation(model, {-1})));
        const RankReport r = rank_harness(model, {&k, &s}, 0);
        CHECK(r.rank == 1);
        CHECK(r.bound == 1);
        CHECK(r.ok);
    }
    {
        const ModelGN model = c2_scalar_model(3, 3);
        const ModuleAnalysis free = analyze(module_from_presentation(model, free_presentation()));
        const ModuleAnalysis sym = analyze(module_from_presentation(model, sym_presentation(model)));
        const ModuleAnalysis k = analyze(module_from_presentation(model, linear_presentation(model, {1})));
        const RankReport r = rank_harness(model, {&free, &sym, &k}, 2);
        CHECK(r.rank == 2);
        CHECK(r.bound == 2);
        try {
            rank_harness(model, {&free}, 1);
            FAIL("expected DimensionTooLarge");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DimensionTooLarge);
        }
    }
    {
        const Catalog cat = example_catalog(ExampleId::parse("heisenberg(1,3,3)"));
        std::vector<ModuleAnalysis> built;
        for (const auto& name : cat.rank_catalogs.front().modules) built.push_back(analyze(build_module(cat.model, cat.module(name), {})));
        std::vector<const ModuleAnalysis*> ptrs;
        for (const auto& a : built) ptrs.push_back(&a);
        const RankReport r = rank_harness(cat.model, ptrs, 1);
        CHECK(r.rank == 0);
        CHECK(r.bound == 1);
        CHECK(r.ok);
    }
}
