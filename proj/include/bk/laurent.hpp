#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "bk/cyclotomic.hpp"

namespace bk {

/// Finite Laurent polynomial in t over Q(zeta_m). Only nonzero coefficients are stored.
class LaurentPoly {
   public:
    LaurentPoly() = default;
    explicit LaurentPoly(int m) : m_(m) {}
    LaurentPoly(int m, std::map<int, CycloNum> terms);

    static LaurentPoly constant(int m, const CycloNum& c) { return monomial(m, 0, c); }
    static LaurentPoly monomial(int m, int degree, const CycloNum& c);
    /// (1 - t^step)^power
    static LaurentPoly one_minus_t_pow(int m, int step, int power);

    int conductor() const noexcept { return m_; }
    const std::map<int, CycloNum>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int min_degree() const;
    int max_degree() const;
    CycloNum coeff(int degree) const;
    void set_coeff(int degree, const CycloNum& c);

    /// Sum of coefficients.
    CycloNum at_one() const;
    /// Terms with degree <= top.
    LaurentPoly truncated(int top) const;

    /// Exact quotient by (1 - t) when it divides, nullopt otherwise.
    std::optional<LaurentPoly> divide_one_minus_t() const;
    /// Multiplicity of t = 1 as a root; -1 for the zero polynomial.
    int vanishing_order_at_one() const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const CycloNum& c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    friend LaurentPoly operator*(LaurentPoly a, const CycloNum& c) { return a *= c; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

   private:
    int m_ = 1;
    std::map<int, CycloNum> terms_;
};

std::string to_string(const LaurentPoly& f);
std::ostream& operator<<(std::ostream& os, const LaurentPoly& f);

}  // namespace bk
