#pragma once

#include <string>

#include "bk/laurent.hpp"

namespace bk {

/// num / (1 - t^m)^den_exp, kept reduced: (1 - t^m) does not divide num when den_exp > 0.
struct RatFuncT {
    LaurentPoly num;
    int den_exp = 0;
    int m = 1;

    /// Cancels common factors of (1 - t^m) and returns the reduced form.
    static RatFuncT reduced(LaurentPoly num, int den_exp, int m);

    /// Power-series coefficients for degrees <= top.
    LaurentPoly expand(int top) const;

    friend bool operator==(const RatFuncT& a, const RatFuncT& b) {
        return a.num == b.num && a.den_exp == b.den_exp && a.m == b.m;
    }
};

std::string to_string(const RatFuncT& f);

/// den_exp minus the vanishing order of num at t = 1 (0 for the zero function).
int pole_order_at_one(const RatFuncT& f);

/// Value at t = 1 of f * mult, by exact cancellation of (1 - t)^den_exp.
/// Throws PoleAtOne if the product is not regular there.
CycloNum eval_at_one(const RatFuncT& f, const LaurentPoly& mult);

/// The reduced num / (1 - t^m)^delta, delta <= delta_max smallest, whose expansion
/// reproduces `series` through degree `top` with `guard` trailing coefficients of
/// slack. Throws InsufficientData when no delta fits.
RatFuncT reconstruct_rational(const LaurentPoly& series, int top, int m, int delta_max, int guard);

}  // namespace bk
