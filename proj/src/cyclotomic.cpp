#include "bk/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bk/error.hpp"

namespace bk {

namespace {

using IntPoly = std::vector<long>;

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
    const std::size_t dd = den.size() - 1;
    IntPoly quot(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
        const long c = num[k];
        quot[k - dd] = c;
        for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    }
    return quot;
}

struct ConductorData {
    int m = 1;
    int phi = 1;
    IntPoly poly;
    std::vector<IntPoly> powers;  // powers[k] = zeta^k in the power basis, k in [0, m)
};

const ConductorData& conductor_data(int m) {
    require(m >= 1, ErrorCode::Internal, "conductor must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ConductorData>> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(m); it != cache.end()) return *it->second;
    }
    auto data = std::make_unique<ConductorData>();
    data->m = m;
    IntPoly num(static_cast<std::size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = poly_div_exact(num, conductor_data(d).poly);
    data->poly = num;
    data->phi = static_cast<int>(num.size()) - 1;
    const auto phi = static_cast<std::size_t>(data->phi);
    IntPoly cur(phi, 0);
    cur[0] = 1;
    for (int k = 0; k < m; ++k) {
        data->powers.push_back(cur);
        IntPoly next(phi + 1, 0);
        for (std::size_t i = 0; i < phi; ++i) next[i + 1] = cur[i];
        const long top = next[phi];
        for (std::size_t i = 0; i <= phi; ++i) next[i] -= top * data->poly[i];
        next.resize(phi);
        cur = next;
    }
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[m];
    if (!slot) slot = std::move(data);
    return *slot;
}

// Sum over exponents e of acc[e] * zeta_m^e, reduced to the power basis.
std::vector<Rational> reduce_exponents(const std::vector<Rational>& acc, int m) {
    const auto& data = conductor_data(m);
    std::vector<Rational> out(static_cast<std::size_t>(data.phi), 0);
    for (std::size_t e = 0; e < acc.size(); ++e) {
        if (acc[e] == 0) continue;
        const auto& row = data.powers[e];
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) out[i] += acc[e] * row[i];
    }
    return out;
}

int lcm(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) fail(ErrorCode::Schema, "not a rational number: '" + text + "'");
    require(r.get_den() != 0, ErrorCode::Schema, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

const std::vector<long>& cyclotomic_polynomial(int m) { return conductor_data(m).poly; }

int euler_phi(int m) { return conductor_data(m).phi; }

CycloNum::CycloNum() : m_(1), coeffs_(1, 0) {}

CycloNum::CycloNum(int n) : m_(1), coeffs_(1, n) {}

CycloNum::CycloNum(const Rational& r) : m_(1), coeffs_(1, r) {}

CycloNum::CycloNum(int m, std::vector<Rational> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    const auto phi = static_cast<std::size_t>(euler_phi(m));
    require(coeffs_.size() <= phi, ErrorCode::Schema,
            "cyclotomic coefficient vector longer than deg Phi_" + std::to_string(m));
    coeffs_.resize(phi, 0);
    for (auto& c : coeffs_) c.canonicalize();
}

CycloNum CycloNum::zeta(int m, std::int64_t k) {
    std::int64_t e = k % m;
    if (e < 0) e += m;
    const auto& row = conductor_data(m).powers[static_cast<std::size_t>(e)];
    std::vector<Rational> c(row.begin(), row.end());
    return CycloNum(m, std::move(c));
}

bool CycloNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational CycloNum::rational_value() const {
    require(is_rational(), ErrorCode::Internal, "cyclotomic number is not rational");
    return coeffs_[0];
}

CycloNum CycloNum::in_conductor(int target) const {
    if (target == m_) return *this;
    require(target % m_ == 0, ErrorCode::Internal, "conductor does not divide target");
    const int step = target / m_;
    std::vector<Rational> acc(static_cast<std::size_t>(target), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) acc[i * static_cast<std::size_t>(step)] = coeffs_[i];
    CycloNum out;
    out.m_ = target;
    out.coeffs_ = reduce_exponents(acc, target);
    return out;
}

CycloNum CycloNum::galois(std::int64_t a) const {
    std::int64_t r = a % m_;
    if (r < 0) r += m_;
    require(std::gcd(r, static_cast<std::int64_t>(m_)) == 1 || m_ == 1, ErrorCode::Internal,
            "Galois exponent not coprime to conductor");
    std::vector<Rational> acc(static_cast<std::size_t>(m_), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        acc[static_cast<std::size_t>((static_cast<std::int64_t>(i) * r) % m_)] += coeffs_[i];
    CycloNum out;
    out.m_ = m_;
    out.coeffs_ = reduce_exponents(acc, m_);
    return out;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
    const int L = lcm(m_, o.m_);
    if (L != m_) *this = in_conductor(L);
    const CycloNum rhs = o.in_conductor(L);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) { return *this += -o; }

CycloNum operator-(CycloNum a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
    if (o.m_ == 1 || is_rational()) {
        // cheap scalar path
        if (o.m_ == 1) {
            for (auto& c : coeffs_) c *= o.coeffs_[0];
            return *this;
        }
        const Rational s = coeffs_[0];
        *this = o;
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    const int L = lcm(m_, o.m_);
    const CycloNum a = in_conductor(L), b = o.in_conductor(L);
    std::vector<Rational> acc(static_cast<std::size_t>(L), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            acc[(i + j) % static_cast<std::size_t>(L)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    m_ = L;
    coeffs_ = reduce_exponents(acc, L);
    return *this;
}

CycloNum CycloNum::inverse() const {
    require(!is_zero(), ErrorCode::Internal, "inverse of zero in Q(zeta)");
    if (is_rational()) return CycloNum(Rational(1) / coeffs_[0]);
    // Solve (x * y) = 1 using the matrix of multiplication by x.
    const auto n = coeffs_.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
    for (std::size_t j = 0; j < n; ++j) {
        const CycloNum col = *this * zeta(m_, static_cast<std::int64_t>(j));
        for (std::size_t i = 0; i < n; ++i) a[i][j] = col.coeffs_[i];
    }
    a[0][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        require(piv < n, ErrorCode::Internal, "singular multiplication matrix");
        std::swap(a[piv], a[c]);
        const Rational lead = a[c][c];
        for (auto& v : a[c]) v /= lead;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i][n];
    return CycloNum(m_, std::move(y));
}

bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.m_ == b.m_) return a.coeffs_ == b.coeffs_;
    const int L = lcm(a.m_, b.m_);
    return a.in_conductor(L).coeffs_ == b.in_conductor(L).coeffs_;
}

CycloNum pow(CycloNum x, std::int64_t e) {
    if (e < 0) {
        x = x.inverse();
        e = -e;
    }
    CycloNum out(1);
    while (e > 0) {
        if (e & 1) out *= x;
        x *= x;
        e >>= 1;
    }
    return out;
}

std::string to_string(const CycloNum& x) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        const Rational& c = x.coeffs()[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        const Rational a = abs(c);
        if (i == 0) os << to_string(a);
        else {
            if (a != 1) os << to_string(a) << "*";
            os << "z" << x.conductor();
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << to_string(x); }

}  // namespace bk
