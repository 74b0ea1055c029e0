#pragma once

// Exact elements of Q(zeta_m) in the power basis modulo the m-th cyclotomic
// polynomial. Values with different conductors combine in Q(zeta_lcm).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Core>

namespace bk {

using Rational = mpq_class;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

/// Coefficients of Phi_m, low degree first.
const std::vector<long>& cyclotomic_polynomial(int m);
int euler_phi(int m);

class CycloNum {
   public:
    CycloNum();
    CycloNum(int n);  // NOLINT
    CycloNum(const Rational& r);  // NOLINT
    CycloNum(int m, std::vector<Rational> coeffs);

    /// zeta_m^k.
    static CycloNum zeta(int m, std::int64_t k);

    int conductor() const noexcept { return m_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;

    /// The same number written in Q(zeta_target); target must be a multiple of conductor().
    CycloNum in_conductor(int target) const;
    /// Field automorphism zeta -> zeta^a, gcd(a, m) = 1.
    CycloNum galois(std::int64_t a) const;
    CycloNum inverse() const;

    CycloNum& operator+=(const CycloNum& o);
    CycloNum& operator-=(const CycloNum& o);
    CycloNum& operator*=(const CycloNum& o);
    CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }

    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
    friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
    friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
    friend CycloNum operator-(CycloNum a);

    friend bool operator==(const CycloNum& a, const CycloNum& b);
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

   private:
    int m_ = 1;
    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloNum& x);
std::string to_string(const CycloNum& x);

CycloNum pow(CycloNum x, std::int64_t e);

inline const CycloNum& conj(const CycloNum& x) { return x; }
inline const CycloNum& real(const CycloNum& x) { return x; }
inline CycloNum imag(const CycloNum&) { return CycloNum(0); }
inline CycloNum abs2(const CycloNum& x) { return x * x; }

}  // namespace bk

namespace Eigen {

template <>
struct NumTraits<bk::CycloNum> : GenericNumTraits<bk::CycloNum> {
    typedef bk::CycloNum Real;
    typedef bk::CycloNum NonInteger;
    typedef bk::CycloNum Literal;
    typedef bk::CycloNum Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 20,
        MulCost = 60
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace bk {
using CycloMatrix = Eigen::Matrix<CycloNum, Eigen::Dynamic, Eigen::Dynamic>;
}
