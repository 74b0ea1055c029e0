#include "bk/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>

namespace bk {

namespace {

using Poly = std::vector<int>;  // low degree first over Z/p

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over Z/p.
Poly poly_mod(Poly a, const Poly& b, int p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const int lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_from_code(std::uint64_t code, int p, int len) {
    Poly out(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < len; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(p));
        code /= static_cast<std::uint64_t>(p);
    }
    return out;
}

std::uint32_t code_from_poly(const Poly& a, int p) {
    std::uint32_t code = 0, place = 1;
    for (int c : a) {
        code += static_cast<std::uint32_t>(c) * place;
        place *= static_cast<std::uint32_t>(p);
    }
    return code;
}

bool irreducible(const Poly& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 1) return true;
    for (int d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly g = poly_from_code(c, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const Poly& modulus, int p, int s) {
    const Poly pa = poly_from_code(a, p, s), pb = poly_from_code(b, p, s);
    Poly prod(static_cast<std::size_t>(2 * s), 0);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] + pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)]) % p;
    return code_from_poly(poly_mod(prod, modulus, p), p);
}

std::unique_ptr<detail::FieldTables> build_field(int p, int s) {
    auto t = std::make_unique<detail::FieldTables>();
    t->p = p;
    t->s = s;
    std::uint64_t q = 1;
    for (int i = 0; i < s; ++i) q *= static_cast<std::uint64_t>(p);
    t->q = static_cast<std::uint32_t>(q);

    for (std::uint64_t c = 0; c < q; ++c) {
        Poly f = poly_from_code(c, p, s);
        f.push_back(1);
        if (irreducible(f, p)) {
            t->modulus = f;
            break;
        }
    }
    require(!t->modulus.empty(), ErrorCode::Internal, "no irreducible polynomial found");

    const std::uint32_t units = t->q - 1;
    t->exp.assign(2 * static_cast<std::size_t>(units), 0);
    t->log.assign(t->q, -1);
    for (std::uint32_t g = 1; g < t->q; ++g) {
        std::uint32_t x = 1, order = 0;
        do {
            x = slow_mul(x, g, t->modulus, p, s);
            ++order;
        } while (x != 1 && order <= units);
        if (order != units) continue;
        t->generator = g;
        x = 1;
        for (std::uint32_t i = 0; i < units; ++i) {
            t->exp[i] = x;
            t->exp[i + units] = x;
            t->log[x] = static_cast<std::int32_t>(i);
            x = slow_mul(x, g, t->modulus, p, s);
        }
        break;
    }
    require(t->generator != 0, ErrorCode::Internal, "no multiplicative generator found");

    t->neg.assign(t->q, 0);
    for (std::uint32_t a = 0; a < t->q; ++a) {
        Poly pa = poly_from_code(a, p, s);
        for (int& c : pa) c = (p - c) % p;
        t->neg[a] = code_from_poly(pa, p);
    }
    if (t->q <= 256 && t->q > 2) {
        std::vector<std::uint32_t> table(static_cast<std::size_t>(t->q) * t->q);
        for (std::uint32_t a = 0; a < t->q; ++a)
            for (std::uint32_t b = 0; b < t->q; ++b) table[static_cast<std::size_t>(a) * t->q + b] = t->add(a, b);
        t->add_table = std::move(table);
    }
    return t;
}

}  // namespace

std::uint32_t FFElem::code() const {
    require(attached(), ErrorCode::Internal, "code() of an element with no field");
    return static_cast<std::uint32_t>(raw_);
}

const detail::FieldTables* FFElem::common(const FFElem& a, const FFElem& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_) fail(ErrorCode::Internal, "arithmetic across different fields");
    return a.field_ ? a.field_ : b.field_;
}

FFElem FFElem::attach(const detail::FieldTables* field) const {
    if (field_) {
        require(field_ == field, ErrorCode::Internal, "element already belongs to another field");
        return *this;
    }
    return FFElem(field, field->from_int(raw_));
}

FFElem& FFElem::operator+=(const FFElem& o) {
    const auto* f = common(*this, o);
    if (!f) {
        raw_ += o.raw_;
        return *this;
    }
    *this = FFElem(f, f->add(attach(f).code(), o.attach(f).code()));
    return *this;
}

FFElem& FFElem::operator-=(const FFElem& o) { return *this += -o; }

FFElem& FFElem::operator*=(const FFElem& o) {
    const auto* f = common(*this, o);
    if (!f) {
        raw_ *= o.raw_;
        return *this;
    }
    *this = FFElem(f, f->mul(attach(f).code(), o.attach(f).code()));
    return *this;
}

FFElem& FFElem::operator/=(const FFElem& o) { return *this *= o.inverse(); }

FFElem operator-(const FFElem& a) {
    if (!a.field_) return FFElem(static_cast<int>(-a.raw_));
    return FFElem(a.field_, a.field_->neg[a.code()]);
}

bool operator==(const FFElem& a, const FFElem& b) {
    const auto* f = FFElem::common(a, b);
    if (!f) return a.raw_ == b.raw_;
    return a.attach(f).code() == b.attach(f).code();
}

FFElem FFElem::inverse() const {
    if (!field_) {
        require(raw_ == 1 || raw_ == -1, ErrorCode::Internal, "inverse of an integer outside any field");
        return *this;
    }
    return FFElem(field_, field_->inv(code()));
}

std::ostream& operator<<(std::ostream& os, const FFElem& x) {
    if (!x.attached()) return os << x.integer();
    return os << x.code();
}

FFElem pow(FFElem x, std::int64_t e) {
    if (e < 0) {
        x = x.inverse();
        e = -e;
    }
    FFElem out(1);
    if (x.attached()) out = out.attach(x.field());
    while (e > 0) {
        if (e & 1) out *= x;
        x *= x;
        e >>= 1;
    }
    return out;
}

FFElem FieldSpec::from_code(std::uint32_t code) const {
    require(code < q(), ErrorCode::Schema, "field element code out of range");
    return FFElem(tables_, code);
}

FFElem FieldSpec::from_digits(std::span<const int> digits) const {
    require(static_cast<int>(digits.size()) <= s(), ErrorCode::Schema, "too many digits for GF(" + std::to_string(q()) + ")");
    std::uint32_t code = 0, place = 1;
    for (int d : digits) {
        require(d >= 0 && d < p(), ErrorCode::Schema, "digit out of range [0, p)");
        code += static_cast<std::uint32_t>(d) * place;
        place *= static_cast<std::uint32_t>(p());
    }
    return FFElem(tables_, code);
}

std::vector<int> FieldSpec::digits(const FFElem& x) const {
    std::uint32_t code = x.attach(tables_).code();
    std::vector<int> out(static_cast<std::size_t>(s()));
    for (int i = 0; i < s(); ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint32_t>(p()));
        code /= static_cast<std::uint32_t>(p());
    }
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec make_field(int p, int s) {
    require(is_prime(p), ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    require(s >= 1, ErrorCode::BadParams, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < s; ++i) {
        q *= static_cast<std::uint64_t>(p);
        require(q <= (1u << 20), ErrorCode::TooLarge, "field order exceeds 2^20");
    }
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<detail::FieldTables>> interned;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = interned[{p, s}];
    if (!slot) slot = build_field(p, s);
    return FieldSpec(slot.get());
}

FFElem primitive_root_of_unity(const FieldSpec& field, std::int64_t m) {
    require(m >= 1, ErrorCode::BadParams, "root of unity order must be positive");
    require((field.q() - 1) % static_cast<std::uint64_t>(m) == 0, ErrorCode::NoSuchRoot,
            std::to_string(m) + " does not divide " + std::to_string(field.q() - 1));
    return pow(field.generator(), static_cast<std::int64_t>((field.q() - 1) / static_cast<std::uint64_t>(m)));
}

std::int64_t multiplicative_order(const FFElem& x) {
    require(x.attached() && !x.is_zero(), ErrorCode::Internal, "order of zero or unattached element");
    const auto* f = x.field();
    const std::int64_t units = f->q - 1;
    return units / std::gcd(static_cast<std::int64_t>(f->log[x.code()]), units);
}

FieldEmbedding::FieldEmbedding(FieldSpec from, FieldSpec to, FFElem image_of_x)
    : from_(from), to_(to), image_of_x_(image_of_x) {
    table_.resize(from_.q());
    for (std::uint32_t c = 0; c < from_.q(); ++c) {
        const auto d = from_.digits(from_.from_code(c));
        FFElem acc = to_.zero(), power = to_.one();
        for (int digit : d) {
            acc += to_.from_int(digit) * power;
            power *= image_of_x_;
        }
        table_[c] = acc.code();
    }
}

FFElem FieldEmbedding::operator()(const FFElem& x) const {
    if (!x.attached()) return x.attach(to_.tables());
    require(x.field() == from_.tables(), ErrorCode::Internal, "embedding applied to element of another field");
    return FFElem(to_.tables(), table_[x.code()]);
}

FieldEmbedding find_embedding(const FieldSpec& from, const FieldSpec& to,
                              std::optional<std::pair<FFElem, FFElem>> constraint) {
    require(from.p() == to.p() && to.s() % from.s() == 0, ErrorCode::Internal, "no embedding between these fields");
    for (std::uint32_t c = 0; c < to.q(); ++c) {
        const FFElem y = to.from_code(c);
        FFElem value = to.zero(), power = to.one();
        for (int coeff : from.modulus()) {
            value += to.from_int(coeff) * power;
            power *= y;
        }
        if (!value.is_zero()) continue;
        FieldEmbedding emb(from, to, y);
        if (constraint && emb(constraint->first) != constraint->second) continue;
        return emb;
    }
    fail(ErrorCode::Internal, "no compatible embedding found");
}

FFMatrix attach(const FFMatrix& m, const FieldSpec& field) {
    return m.unaryExpr([&](const FFElem& x) { return x.attach(field.tables()); });
}

FFMatrix identity(const FieldSpec& field, Eigen::Index n) {
    FFMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = i == j ? field.one() : field.zero();
    return out;
}

FFMatrix apply(const FieldEmbedding& emb, const FFMatrix& m) {
    return m.unaryExpr([&](const FFElem& x) { return emb(x); });
}

}  // namespace bk
