#pragma once

// Finite fields GF(p^s) with table arithmetic, usable as an Eigen scalar.
//
// Elements are encoded by the integer sum c_i p^i of their coefficients in the
// power basis modulo the field modulus. A default-constructed or int-constructed
// FFElem is "unattached": it stands for the image of an integer and takes on a
// field as soon as it meets an attached element. This is what lets
// Eigen's Scalar(0) / Scalar(1) work without knowing the field.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bk/error.hpp"

namespace bk {

namespace detail {

struct FieldTables {
    int p = 0;
    int s = 0;
    std::uint32_t q = 0;
    std::vector<int> modulus;  // monic, low degree first, length s + 1
    std::vector<std::uint32_t> exp;  // exp[i] = g^i, length 2(q-1)
    std::vector<std::int32_t> log;   // log[0] = -1
    std::vector<std::uint32_t> add_table;  // q*q entries for small q
    std::vector<std::uint32_t> neg;
    std::uint32_t generator = 0;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        if (!add_table.empty()) return add_table[static_cast<std::size_t>(a) * q + b];
        if (p == 2) return a ^ b;
        if (s == 1) return (a + b) % static_cast<std::uint32_t>(p);
        std::uint32_t out = 0, place = 1;
        for (int i = 0; i < s; ++i) {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        return out;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp[static_cast<std::size_t>(log[a]) + static_cast<std::size_t>(log[b])];
    }
    std::uint32_t inv(std::uint32_t a) const {
        require(a != 0, ErrorCode::Internal, "inverse of zero in GF(" + std::to_string(q) + ")");
        return exp[(q - 1 - static_cast<std::uint32_t>(log[a])) % (q - 1)];
    }
    std::uint32_t from_int(std::int64_t n) const noexcept {
        std::int64_t r = n % p;
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
};

}  // namespace detail

class FFElem {
   public:
    FFElem() = default;
    FFElem(int n) : raw_(n) {}  // NOLINT: integers embed implicitly, as in any ring
    FFElem(const detail::FieldTables* field, std::uint32_t code) : field_(field), raw_(code) {}

    const detail::FieldTables* field() const noexcept { return field_; }
    bool attached() const noexcept { return field_ != nullptr; }
    std::uint32_t code() const;
    std::int64_t integer() const noexcept { return raw_; }

    bool is_zero() const noexcept { return attached() ? raw_ == 0 : raw_ == 0; }
    bool is_one() const noexcept { return raw_ == 1; }

    FFElem attach(const detail::FieldTables* field) const;

    FFElem& operator+=(const FFElem& o);
    FFElem& operator-=(const FFElem& o);
    FFElem& operator*=(const FFElem& o);
    FFElem& operator/=(const FFElem& o);

    friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
    friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
    friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
    friend FFElem operator/(FFElem a, const FFElem& b) { return a /= b; }
    friend FFElem operator-(const FFElem& a);

    friend bool operator==(const FFElem& a, const FFElem& b);
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

    FFElem inverse() const;

   private:
    static const detail::FieldTables* common(const FFElem& a, const FFElem& b);

    const detail::FieldTables* field_ = nullptr;
    std::int64_t raw_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FFElem& x);

FFElem pow(FFElem x, std::int64_t e);

// Eigen's generic code paths look these up by ADL.
inline const FFElem& conj(const FFElem& x) { return x; }
inline const FFElem& real(const FFElem& x) { return x; }
inline FFElem imag(const FFElem&) { return FFElem(0); }
inline FFElem abs2(const FFElem& x) { return x * x; }

/// Handle to an interned field. Tables live for the whole process, so FFElem
/// can carry a raw pointer to them.
class FieldSpec {
   public:
    FieldSpec() = default;
    explicit FieldSpec(const detail::FieldTables* t) : tables_(t) {}

    int p() const { return tables_->p; }
    int s() const { return tables_->s; }
    std::uint32_t q() const { return tables_->q; }
    const std::vector<int>& modulus() const { return tables_->modulus; }
    const detail::FieldTables* tables() const noexcept { return tables_; }
    bool valid() const noexcept { return tables_ != nullptr; }

    FFElem zero() const { return FFElem(tables_, 0); }
    FFElem one() const { return FFElem(tables_, 1); }
    FFElem from_code(std::uint32_t code) const;
    FFElem from_digits(std::span<const int> digits) const;
    FFElem from_int(std::int64_t n) const { return FFElem(tables_, tables_->from_int(n)); }
    std::vector<int> digits(const FFElem& x) const;
    /// Least-encoded generator of the multiplicative group.
    FFElem generator() const { return FFElem(tables_, tables_->generator); }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.tables_ == b.tables_; }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return a.tables_ != b.tables_; }

   private:
    const detail::FieldTables* tables_ = nullptr;
};

bool is_prime(std::int64_t n);

/// GF(p^s) whose modulus is the monic irreducible of degree s with least
/// integer code. Throws NonPrime, TooLarge (q > 2^20).
FieldSpec make_field(int p, int s);

/// xi = g^((q-1)/m) for the least-encoded generator g. Throws NoSuchRoot if m does not divide q-1.
FFElem primitive_root_of_unity(const FieldSpec& field, std::int64_t m);

std::int64_t multiplicative_order(const FFElem& x);

/// A field homomorphism `from` -> `to`, fixed by the image of the class of x.
class FieldEmbedding {
   public:
    FieldEmbedding() = default;
    FieldEmbedding(FieldSpec from, FieldSpec to, FFElem image_of_x);

    const FieldSpec& from() const { return from_; }
    const FieldSpec& to() const { return to_; }
    const FFElem& image_of_x() const { return image_of_x_; }

    FFElem operator()(const FFElem& x) const;

   private:
    FieldSpec from_, to_;
    FFElem image_of_x_;
    std::vector<std::uint32_t> table_;
};

/// Least-encoded root of from's modulus in `to`, optionally subject to
/// embedding(constraint_source) == constraint_target.
FieldEmbedding find_embedding(const FieldSpec& from, const FieldSpec& to,
                              std::optional<std::pair<FFElem, FFElem>> constraint = std::nullopt);

}  // namespace bk

namespace Eigen {

template <>
struct NumTraits<bk::FFElem> : GenericNumTraits<bk::FFElem> {
    typedef bk::FFElem Real;
    typedef bk::FFElem NonInteger;
    typedef bk::FFElem Literal;
    typedef bk::FFElem Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 3
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace bk {

using FFMatrix = Eigen::Matrix<FFElem, Eigen::Dynamic, Eigen::Dynamic>;
using FFRowVector = Eigen::Matrix<FFElem, 1, Eigen::Dynamic>;

/// Matrix with every entry attached to `field`.
FFMatrix attach(const FFMatrix& m, const FieldSpec& field);
FFMatrix identity(const FieldSpec& field, Eigen::Index n);
FFMatrix apply(const FieldEmbedding& emb, const FFMatrix& m);

}  // namespace bk
