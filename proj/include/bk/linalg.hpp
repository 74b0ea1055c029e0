#pragma once

// Exact linear algebra over any field-valued Eigen scalar (FFElem, CycloNum).
// Dense routines take Eigen expressions; the sparse echelon below handles the
// large, very sparse maps of graded modules.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bk/cyclotomic.hpp"
#include "bk/finite_field.hpp"

namespace bk {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline bool is_zero(const FFElem& x) { return x.is_zero(); }
inline bool is_zero(const CycloNum& x) { return x.is_zero(); }

/// Reduced row echelon form; pivot columns are appended to `pivots` when given.
template <class Derived>
Matrix<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& a,
                                             std::vector<Eigen::Index>* pivots = nullptr) {
    using Scalar = typename Derived::Scalar;
    Matrix<Scalar> m = a;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = row;
        while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, col))) continue;
            const Scalar f = m(r, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return m;
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
    std::vector<Eigen::Index> pivots;
    row_echelon(a, &pivots);
    return static_cast<Eigen::Index>(pivots.size());
}

/// Basis (as columns) of { x : a x = 0 }.
template <class Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    std::vector<Eigen::Index> pivots;
    const Matrix<Scalar> r = row_echelon(a, &pivots);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    Matrix<Scalar> out(a.cols(), a.cols() - static_cast<Eigen::Index>(pivots.size()));
    out.setConstant(Scalar(0));
    Eigen::Index k = 0;
    for (Eigen::Index free = 0; free < a.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        out(free, k) = Scalar(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            out(pivots[i], k) = -r(static_cast<Eigen::Index>(i), free);
        ++k;
    }
    return out;
}

/// Basis (as rows) of { x : x a = 0 }, the kernel of a right action on row vectors.
template <class Derived>
Matrix<typename Derived::Scalar> left_kernel(const Eigen::MatrixBase<Derived>& a) {
    return kernel(a.transpose()).transpose();
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    Matrix<Scalar> m = a;
    Scalar det(1);
    const Eigen::Index n = m.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        while (piv < n && is_zero(m(piv, c))) ++piv;
        if (piv == n) return Scalar(0);
        if (piv != c) {
            m.row(piv).swap(m.row(c));
            det = -det;
        }
        det *= m(c, c);
        const Scalar inv = Scalar(1) / m(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r) {
            if (is_zero(m(r, c))) continue;
            const Scalar f = m(r, c) * inv;
            for (Eigen::Index j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class Derived>
std::optional<Matrix<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = a.rows();
    Matrix<Scalar> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n).setConstant(Scalar(0));
    for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = Scalar(1);
    std::vector<Eigen::Index> pivots;
    const Matrix<Scalar> r = row_echelon(aug, &pivots);
    if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[static_cast<std::size_t>(n - 1)] != n - 1)) return std::nullopt;
    return Matrix<Scalar>(r.rightCols(n));
}

template <class Derived>
Matrix<typename Derived::Scalar> kronecker(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Derived>& b) {
    Matrix<typename Derived::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// ---------------------------------------------------------------------------
// Sparse

template <class Scalar>
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Rows are images of basis vectors under a right action: x -> x * A.
template <class Scalar>
struct SparseMap {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SparseVec<Scalar>> images;

    SparseMap() = default;
    SparseMap(std::size_t r, std::size_t c) : rows(r), cols(c), images(r) {}

    static SparseMap identity(std::size_t n, const Scalar& one) {
        SparseMap out(n, n);
        for (std::size_t i = 0; i < n; ++i) out.images[i].emplace_back(static_cast<std::uint32_t>(i), one);
        return out;
    }
};

/// Dense accumulator used to add scaled sparse vectors.
template <class Scalar>
class SparseAccumulator {
   public:
    explicit SparseAccumulator(std::size_t dim) : values_(dim, Scalar(0)), touched_(dim, false) {}

    void add(const SparseVec<Scalar>& v, const Scalar& scale) {
        for (const auto& [i, x] : v) add(i, scale * x);
    }
    void add(std::uint32_t i, const Scalar& x) {
        if (!touched_[i]) {
            touched_[i] = true;
            index_.push_back(i);
            values_[i] = x;
        } else values_[i] += x;
    }
    SparseVec<Scalar> take() {
        std::sort(index_.begin(), index_.end());
        SparseVec<Scalar> out;
        out.reserve(index_.size());
        for (auto i : index_) {
            if (!is_zero(values_[i])) out.emplace_back(i, values_[i]);
            values_[i] = Scalar(0);
            touched_[i] = false;
        }
        index_.clear();
        return out;
    }

   private:
    std::vector<Scalar> values_;
    std::vector<bool> touched_;
    std::vector<std::uint32_t> index_;
};

template <class Scalar>
SparseVec<Scalar> apply(const SparseVec<Scalar>& v, const SparseMap<Scalar>& a) {
    SparseAccumulator<Scalar> acc(a.cols);
    for (const auto& [i, x] : v) acc.add(a.images[i], x);
    return acc.take();
}

/// a then b.
template <class Scalar>
SparseMap<Scalar> compose(const SparseMap<Scalar>& a, const SparseMap<Scalar>& b) {
    SparseMap<Scalar> out(a.rows, b.cols);
    SparseAccumulator<Scalar> acc(b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (const auto& [k, x] : a.images[i]) acc.add(b.images[k], x);
        out.images[i] = acc.take();
    }
    return out;
}

template <class Scalar>
Matrix<Scalar> to_dense(const SparseMap<Scalar>& a, const Scalar& zero) {
    Matrix<Scalar> out(static_cast<Eigen::Index>(a.rows), static_cast<Eigen::Index>(a.cols));
    out.setConstant(zero);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [j, x] : a.images[i]) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
    return out;
}

template <class Scalar>
SparseMap<Scalar> to_sparse(const Matrix<Scalar>& a) {
    SparseMap<Scalar> out(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!is_zero(a(i, j))) out.images[static_cast<std::size_t>(i)].emplace_back(static_cast<std::uint32_t>(j), a(i, j));
    return out;
}

/// Semi-echelon basis of a subspace of Scalar^dim. Each row has leading
/// coefficient 1 at a distinct pivot column; reduction by the rows in pivot
/// order gives a normal form supported on non-pivot columns.
template <class Scalar>
class SparseEchelon {
   public:
    struct Reduction {
        SparseVec<Scalar> remainder;
        std::vector<std::pair<std::size_t, Scalar>> used;  // (row, multiple subtracted)
    };

    explicit SparseEchelon(std::size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::uint32_t col) const { return pivot_row_[col] >= 0; }
    const std::vector<SparseVec<Scalar>>& rows() const { return rows_; }

    Reduction reduce_tracked(const SparseVec<Scalar>& v) const {
        Reduction out;
        std::vector<Scalar> acc(dim_, Scalar(0));
        std::vector<bool> queued(dim_, false);
        std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
        for (const auto& [i, x] : v) {
            acc[i] = x;
            queued[i] = true;
            heap.push(i);
        }
        while (!heap.empty()) {
            const std::uint32_t i = heap.top();
            heap.pop();
            queued[i] = false;
            if (is_zero(acc[i])) continue;
            const int r = pivot_row_[i];
            if (r < 0) {
                out.remainder.emplace_back(i, acc[i]);
                continue;
            }
            const Scalar c = acc[i];
            out.used.emplace_back(static_cast<std::size_t>(r), c);
            for (const auto& [j, y] : rows_[static_cast<std::size_t>(r)]) {
                acc[j] -= c * y;
                if (!queued[j] && j != i) {
                    queued[j] = true;
                    heap.push(j);
                }
            }
            acc[i] = Scalar(0);
        }
        return out;
    }

    SparseVec<Scalar> reduce(const SparseVec<Scalar>& v) const { return reduce_tracked(v).remainder; }

    /// Inserts the reduced form of v; returns the new row index, or -1 if v was dependent.
    long insert(const SparseVec<Scalar>& v) { return insert_reduced(reduce(v)); }

    long insert_reduced(SparseVec<Scalar> rem) {
        if (rem.empty()) return -1;
        const Scalar inv = Scalar(1) / rem.front().second;
        for (auto& [j, y] : rem) y *= inv;
        pivot_row_[rem.front().first] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(rem));
        return static_cast<long>(rows_.size()) - 1;
    }

   private:
    std::size_t dim_;
    std::vector<int> pivot_row_;
    std::vector<SparseVec<Scalar>> rows_;
};

/// Rank of a sparse map (dimension of its image).
template <class Scalar>
std::size_t rank(const SparseMap<Scalar>& a) {
    SparseEchelon<Scalar> ech(a.cols);
    for (const auto& row : a.images) ech.insert(row);
    return ech.rank();
}

}  // namespace bk
