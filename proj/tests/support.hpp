#pragma once

// Small adapters between library values and the plain types the oracle uses.

#include <complex>
#include <vector>

#include "bk/cyclotomic.hpp"
#include "bk/finite_field.hpp"
#include "bk/laurent.hpp"

#include "oracle.hpp"

namespace testing {

inline std::complex<double> numeric(const bk::CycloNum& x) {
    std::complex<double> out = 0;
    const auto& c = x.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out += c[i].get_d() * oracle::root_of_unity(x.conductor(), static_cast<long>(i));
    return out;
}

inline bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

inline bk::LaurentPoly poly(const std::vector<long>& coeffs, int lowest = 0) {
    bk::LaurentPoly f(1);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.set_coeff(lowest + static_cast<int>(i), bk::CycloNum(bk::Rational(coeffs[i])));
    return f;
}

inline bk::FFMatrix matrix(const bk::FieldSpec& k, int rows, int cols, const std::vector<int>& codes) {
    bk::FFMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = k.from_code(static_cast<std::uint32_t>(codes[static_cast<std::size_t>(i * cols + j)]));
    return a;
}

inline bk::FFMatrix diagonal(const bk::FieldSpec& k, const std::vector<int>& entries) {
    const auto n = static_cast<Eigen::Index>(entries.size());
    bk::FFMatrix a = bk::identity(k, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = k.from_int(entries[static_cast<std::size_t>(i)]);
    return a;
}

}  // namespace testing
