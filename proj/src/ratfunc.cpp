#include "bk/ratfunc.hpp"

#include "bk/error.hpp"

namespace bk {

namespace {

// Exact quotient of f by (1 - t^m), if any.
std::optional<LaurentPoly> divide_one_minus_t_pow(const LaurentPoly& f, int m) {
    if (f.is_zero()) return f;
    // f = (1 - t^m) g  <=>  g_n = f_n + g_{n-m}
    LaurentPoly g(f.conductor());
    const int lo = f.min_degree(), hi = f.max_degree();
    for (int n = lo; n <= hi - m; ++n) g.set_coeff(n, f.coeff(n) + g.coeff(n - m));
    // remainder must vanish in the top m degrees
    for (int n = hi - m + 1; n <= hi; ++n)
        if (!(f.coeff(n) + g.coeff(n - m)).is_zero()) return std::nullopt;
    return g;
}

}  // namespace

RatFuncT RatFuncT::reduced(LaurentPoly num, int den_exp, int m) {
    require(den_exp >= 0 && m >= 1, ErrorCode::Internal, "bad rational function shape");
    if (num.is_zero()) return RatFuncT{LaurentPoly(num.conductor()), 0, m};
    while (den_exp > 0) {
        auto q = divide_one_minus_t_pow(num, m);
        if (!q) break;
        num = std::move(*q);
        --den_exp;
    }
    return RatFuncT{std::move(num), den_exp, m};
}

LaurentPoly RatFuncT::expand(int top) const {
    LaurentPoly out(num.conductor());
    if (num.is_zero()) return out;
    // 1/(1 - t^m)^e = sum_k C(k + e - 1, e - 1) t^{mk}
    std::map<int, CycloNum> series;
    const int span = top - num.min_degree();
    if (span < 0) return out;
    for (int k = 0; m * k <= span; ++k) {
        mpz_class binom = 1;
        if (den_exp > 0) mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k + den_exp - 1),
                                      static_cast<unsigned long>(den_exp - 1));
        else if (k > 0) break;
        series.emplace(m * k, CycloNum(Rational(binom)));
    }
    const LaurentPoly s(num.conductor(), std::move(series));
    return (num * s).truncated(top);
}

std::string to_string(const RatFuncT& f) {
    std::string out = "(" + to_string(f.num) + ")";
    if (f.den_exp > 0) {
        out += " / (1 - t";
        if (f.m != 1) out += "^" + std::to_string(f.m);
        out += ")";
        if (f.den_exp != 1) out += "^" + std::to_string(f.den_exp);
    }
    return out;
}

int pole_order_at_one(const RatFuncT& f) {
    if (f.num.is_zero()) return 0;
    return f.den_exp - f.num.vanishing_order_at_one();
}

CycloNum eval_at_one(const RatFuncT& f, const LaurentPoly& mult) {
    LaurentPoly prod = f.num * mult;
    for (int i = 0; i < f.den_exp; ++i) {
        if (prod.is_zero()) return CycloNum(0);
        auto q = prod.divide_one_minus_t();
        if (!q) fail(ErrorCode::PoleAtOne, "product has a pole of order " + std::to_string(f.den_exp - i) + " at t = 1");
        prod = std::move(*q);
    }
    // (1 - t^m) = (1 - t)(1 + ... + t^{m-1}), and the second factor is m at t = 1.
    CycloNum value = prod.at_one();
    for (int i = 0; i < f.den_exp; ++i) value *= CycloNum(Rational(1, f.m));
    return value;
}

RatFuncT reconstruct_rational(const LaurentPoly& series, int top, int m, int delta_max, int guard) {
    require(guard >= 1, ErrorCode::BadParams, "guard window must be positive");
    const LaurentPoly data = series.truncated(top);
    if (data.is_zero()) return RatFuncT{LaurentPoly(series.conductor()), 0, m};
    for (int delta = 0; delta <= delta_max; ++delta) {
        const LaurentPoly cleared = (data * LaurentPoly::one_minus_t_pow(series.conductor(), m, delta)).truncated(top);
        bool tail_clear = true;
        for (int n = top - guard + 1; n <= top; ++n)
            if (!cleared.coeff(n).is_zero()) {
                tail_clear = false;
                break;
            }
        if (!tail_clear) continue;
        return RatFuncT::reduced(cleared, delta, m);
    }
    fail(ErrorCode::InsufficientData, "no denominator (1 - t^" + std::to_string(m) + ")^d with d <= " +
                                          std::to_string(delta_max) + " reproduces the guard window");
}

}  // namespace bk
