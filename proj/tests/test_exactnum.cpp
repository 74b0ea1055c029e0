#include "doctest.h"

#include "bk/cyclotomic.hpp"
#include "bk/error.hpp"
#include "bk/finite_field.hpp"
#include "bk/laurent.hpp"
#include "bk/lifting.hpp"
#include "bk/ratfunc.hpp"

#include "oracle.hpp"
#include "support.hpp"

using namespace bk;
using testing::numeric;
using testing::poly;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("field moduli are the least irreducibles") {
    CHECK(make_field(3, 1).modulus() == std::vector<int>{0, 1});
    CHECK(make_field(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});
    CHECK(oracle::least_irreducible(2, 3) == std::vector<int>{1, 1, 0, 1});
    for (auto [p, s] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
        CAPTURE(p);
        CAPTURE(s);
        CHECK(make_field(p, s).modulus() == oracle::least_irreducible(p, s));
    }
}

TEST_CASE("make_field rejects composite characteristic") {
    CHECK(code_of([] { make_field(4, 1); }) == ErrorCode::NonPrime);
    CHECK(code_of([] { make_field(1, 1); }) == ErrorCode::NonPrime);
}

TEST_CASE("field arithmetic") {
    const FieldSpec k = make_field(3, 2);
    for (std::uint32_t a = 1; a < k.q(); ++a) {
        const FFElem x = k.from_code(a);
        CHECK(x * x.inverse() == k.one());
        CHECK(pow(x, 8) == k.one());
        CHECK(x + (-x) == k.zero());
    }
    CHECK(FFElem(5) * k.one() == k.from_int(2));
    CHECK(k.digits(k.from_code(7)) == std::vector<int>{1, 2});
}

TEST_CASE("primitive roots of unity") {
    CHECK(primitive_root_of_unity(make_field(7, 1), 6).code() == 3);
    CHECK(primitive_root_of_unity(make_field(7, 1), 1).code() == 1);
    const FieldSpec f4 = make_field(2, 2);
    CHECK(primitive_root_of_unity(f4, 3) == f4.generator());
    CHECK(f4.generator().code() == 2);
    CHECK(code_of([&] { primitive_root_of_unity(f4, 2); }) == ErrorCode::NoSuchRoot);
    for (int p : {3, 5, 7, 11, 13, 17}) {
        long least = 2;
        while (oracle::mult_order_mod(least, p) != p - 1) ++least;
        CHECK(make_field(p, 1).generator().code() == least);
    }
}

TEST_CASE("lifting roots of unity") {
    const FieldSpec f7 = make_field(7, 1);
    CHECK(lift_root(f7.one(), f7.from_int(3), 6) == CycloNum(1));
    CHECK(lift_root(f7.from_int(6), f7.from_int(3), 6) == CycloNum(-1));
    const FieldSpec f4 = make_field(2, 2);
    CHECK(lift_root(f4.generator(), f4.generator(), 3) == CycloNum::zeta(3, 1));
    CHECK(code_of([&] { lift_root(f7.from_int(2), f7.from_int(6), 2); }) == ErrorCode::NotARoot);
}

TEST_CASE("eigenvalue multiplicities") {
    const FieldSpec f3 = make_field(3, 1);
    CHECK(eigen_multiplicities(identity(f3, 3), f3.from_int(2), 2) == std::map<int, int>{{0, 3}});
    CHECK(eigen_multiplicities(testing::diagonal(f3, {-1, -1, 1}), f3.from_int(2), 2) == std::map<int, int>{{0, 1}, {1, 2}});
    const FieldSpec f4 = make_field(2, 2);
    // companion of x^2 + x + 1
    const FFMatrix c = testing::matrix(f4, 2, 2, {0, 1, 1, 1});
    CHECK(eigen_multiplicities(c, f4.generator(), 3) == std::map<int, int>{{1, 1}, {2, 1}});
    CHECK(lift_multiplicities({{1, 1}, {2, 1}}, 3) == CycloNum(-1));
}

TEST_CASE("cyclotomic arithmetic agrees with complex evaluation") {
    for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15}) {
        CAPTURE(m);
        CycloNum total(0);
        for (int k = 0; k < m; ++k) {
            const CycloNum z = CycloNum::zeta(m, k);
            CHECK(testing::near(numeric(z), oracle::root_of_unity(m, k)));
            total += z;
        }
        CHECK(total == CycloNum(m == 1 ? 1 : 0));
    }
    const CycloNum a = CycloNum::zeta(7, 1) + CycloNum::zeta(7, 2) + CycloNum::zeta(7, 4);
    const CycloNum b = CycloNum::zeta(3, 1) - CycloNum(Rational(1, 2));
    CHECK(testing::near(numeric(a * b), numeric(a) * numeric(b)));
    CHECK(testing::near(numeric(a / b), numeric(a) / numeric(b)));
    // a and its conjugate are the roots of x^2 + x + 2
    CHECK(a * a + a + CycloNum(2) == CycloNum(0));
    CHECK(a.galois(3) == CycloNum(-1) - a);
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
}

TEST_CASE("laurent polynomials") {
    const LaurentPoly f = LaurentPoly::one_minus_t_pow(1, 1, 5);
    for (int n = 0; n <= 5; ++n) CHECK(f.coeff(n) == CycloNum((n % 2 ? -1 : 1) * oracle::binomial(5, n)));
    CHECK(f.vanishing_order_at_one() == 5);
    CHECK(poly({1, 0, -1}, -1).min_degree() == -1);
    CHECK(*poly({1, -1}).divide_one_minus_t() == poly({1}));
    CHECK_FALSE(poly({1, 1}).divide_one_minus_t().has_value());
    CHECK(LaurentPoly(1).vanishing_order_at_one() == -1);
}

TEST_CASE("pole orders at one") {
    CHECK(pole_order_at_one(RatFuncT{poly({1, -1}), 1, 2}) == 0);
    CHECK(pole_order_at_one(RatFuncT{poly({1, 1}), 1, 2}) == 1);
    CHECK(pole_order_at_one(RatFuncT{poly({5}), 0, 1}) == 0);
}

TEST_CASE("evaluation at one") {
    CHECK(eval_at_one(RatFuncT{poly({1, -1}), 1, 2}, poly({1, 1})) == CycloNum(1));
    CHECK(eval_at_one(RatFuncT{poly({1, 1}), 1, 2}, poly({1, -1})) == CycloNum(1));
    CHECK(code_of([] { eval_at_one(RatFuncT{poly({1}), 1, 1}, poly({1})); }) == ErrorCode::PoleAtOne);
}

TEST_CASE("rational reconstruction") {
    {
        std::vector<long> alt;
        for (int n = 0; n <= 8; ++n) alt.push_back(n % 2 ? -1 : 1);
        const RatFuncT f = reconstruct_rational(poly(alt), 8, 2, 2, 3);
        CHECK(f.num == poly({1, -1}));
        CHECK(f.den_exp == 1);
        CHECK(f.m == 2);
    }
    {
        std::vector<long> sq;
        for (int n = 0; n <= 8; ++n) sq.push_back(oracle::binomial(n + 1, 1));
        const RatFuncT f = reconstruct_rational(poly(sq), 8, 1, 2, 3);
        CHECK(f.num == poly({1}));
        CHECK(f.den_exp == 2);
        CHECK(f.expand(12) == [] {
            std::vector<long> c;
            for (int n = 0; n <= 12; ++n) c.push_back(n + 1);
            return poly(c);
        }());
    }
    {
        const RatFuncT f = reconstruct_rational(poly({7}), 8, 1, 2, 3);
        CHECK(f.num == poly({7}));
        CHECK(f.den_exp == 0);
    }
    std::vector<long> cube;
    for (int n = 0; n <= 8; ++n) cube.push_back(oracle::binomial(n + 2, 2));
    CHECK(code_of([&] { reconstruct_rational(poly(cube), 8, 1, 2, 3); }) == ErrorCode::InsufficientData);
}
