#include "bk/lifting.hpp"

#include "bk/error.hpp"

namespace bk {

namespace {

void check_order(const FFElem& omega, int m) {
    require(m >= 1, ErrorCode::BadParams, "root order must be positive");
    require(omega.attached() && multiplicative_order(omega) == m, ErrorCode::Internal,
            "omega does not have order " + std::to_string(m));
}

SparseMap<FFElem> shifted_by(const SparseMap<FFElem>& a, const FFElem& lambda) {
    SparseMap<FFElem> out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        SparseAccumulator<FFElem> acc(a.cols);
        acc.add(a.images[i], lambda.field() ? FFElem(lambda.field(), 1) : FFElem(1));
        acc.add(static_cast<std::uint32_t>(i), -lambda);
        out.images[i] = acc.take();
    }
    return out;
}

template <class RankOf>
std::map<int, int> collect(int n, const FFElem& omega, int m, RankOf rank_of) {
    std::map<int, int> out;
    int total = 0;
    FFElem lambda = FFElem(omega.field(), 1);
    for (int i = 0; i < m && total < n; ++i, lambda *= omega) {
        const int mult = n - rank_of(lambda);
        if (mult > 0) out[i] = mult;
        total += mult;
    }
    require(total == n, ErrorCode::NotSemisimple,
            "eigenspaces for powers of omega span " + std::to_string(total) + " of " + std::to_string(n) + " dimensions");
    return out;
}

}  // namespace

CycloNum lift_root(const FFElem& xi, const FFElem& omega, int m) {
    check_order(omega, m);
    FFElem power = FFElem(omega.field(), 1);
    for (int i = 0; i < m; ++i, power *= omega)
        if (power == xi) return CycloNum::zeta(m, i);
    fail(ErrorCode::NotARoot, "element is not a power of omega");
}

std::map<int, int> eigen_multiplicities(const FFMatrix& mat, const FFElem& omega, int m) {
    check_order(omega, m);
    require(mat.rows() == mat.cols(), ErrorCode::DimMismatch, "eigenvalues of a non-square matrix");
    const auto n = static_cast<int>(mat.rows());
    const FFMatrix id = identity(FieldSpec(omega.field()), mat.rows());
    return collect(n, omega, m, [&](const FFElem& lambda) {
        return static_cast<int>(rank(FFMatrix(mat - lambda * id)));
    });
}

std::map<int, int> eigen_multiplicities(const SparseMap<FFElem>& mat, const FFElem& omega, int m) {
    check_order(omega, m);
    require(mat.rows == mat.cols, ErrorCode::DimMismatch, "eigenvalues of a non-square matrix");
    return collect(static_cast<int>(mat.rows), omega, m, [&](const FFElem& lambda) {
        return static_cast<int>(rank(shifted_by(mat, lambda)));
    });
}

CycloNum lift_multiplicities(const std::map<int, int>& mult, int m) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(m), Rational(0));
    for (const auto& [i, k] : mult) coeffs[static_cast<std::size_t>(i)] += k;
    CycloNum out(0);
    for (int i = 0; i < m; ++i)
        if (coeffs[static_cast<std::size_t>(i)] != 0) out += CycloNum::zeta(m, i) * CycloNum(coeffs[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace bk
