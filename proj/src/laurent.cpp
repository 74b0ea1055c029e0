#include "bk/laurent.hpp"

#include <ostream>
#include <sstream>

#include "bk/error.hpp"

namespace bk {

LaurentPoly::LaurentPoly(int m, std::map<int, CycloNum> terms) : m_(m) {
    for (auto& [deg, c] : terms)
        if (!c.is_zero()) terms_.emplace(deg, std::move(c));
}

LaurentPoly LaurentPoly::monomial(int m, int degree, const CycloNum& c) {
    LaurentPoly out(m);
    out.set_coeff(degree, c);
    return out;
}

LaurentPoly LaurentPoly::one_minus_t_pow(int m, int step, int power) {
    require(power >= 0 && step >= 1, ErrorCode::Internal, "bad (1 - t^step)^power");
    LaurentPoly base(m);
    base.set_coeff(0, CycloNum(1));
    base.set_coeff(step, CycloNum(-1));
    LaurentPoly out = constant(m, CycloNum(1));
    for (int i = 0; i < power; ++i) out *= base;
    return out;
}

int LaurentPoly::min_degree() const {
    require(!terms_.empty(), ErrorCode::Internal, "degree of the zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_degree() const {
    require(!terms_.empty(), ErrorCode::Internal, "degree of the zero polynomial");
    return terms_.rbegin()->first;
}

CycloNum LaurentPoly::coeff(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? CycloNum(0) : it->second;
}

void LaurentPoly::set_coeff(int degree, const CycloNum& c) {
    if (c.is_zero()) terms_.erase(degree);
    else terms_[degree] = c;
}

CycloNum LaurentPoly::at_one() const {
    CycloNum sum(0);
    for (const auto& [deg, c] : terms_) sum += c;
    return sum;
}

LaurentPoly LaurentPoly::truncated(int top) const {
    LaurentPoly out(m_);
    for (const auto& [deg, c] : terms_)
        if (deg <= top) out.terms_.emplace(deg, c);
    return out;
}

std::optional<LaurentPoly> LaurentPoly::divide_one_minus_t() const {
    if (terms_.empty()) return *this;
    // f = (1 - t) g  <=>  g_n = sum_{k <= n} f_k, and the total sum vanishes.
    LaurentPoly g(m_);
    CycloNum running(0);
    const int lo = min_degree(), hi = max_degree();
    for (int n = lo; n <= hi; ++n) {
        running += coeff(n);
        if (n < hi) g.set_coeff(n, running);
    }
    if (!running.is_zero()) return std::nullopt;
    return g;
}

int LaurentPoly::vanishing_order_at_one() const {
    if (terms_.empty()) return -1;
    int order = 0;
    LaurentPoly cur = *this;
    while (auto next = cur.divide_one_minus_t()) {
        cur = std::move(*next);
        ++order;
    }
    return order;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [deg, c] : o.terms_) {
        auto it = terms_.find(deg);
        if (it == terms_.end()) terms_.emplace(deg, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    LaurentPoly neg = o;
    neg *= CycloNum(-1);
    return *this += neg;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    std::map<int, CycloNum> acc;
    for (const auto& [da, a] : terms_)
        for (const auto& [db, b] : o.terms_) {
            auto [it, inserted] = acc.try_emplace(da + db, a * b);
            if (!inserted) it->second += a * b;
        }
    *this = LaurentPoly(m_, std::move(acc));
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const CycloNum& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [deg, v] : terms_) v *= c;
    return *this;
}

std::string to_string(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [deg, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        const bool compound = !c.is_rational();
        if (deg == 0) {
            os << (compound ? "(" + to_string(c) + ")" : to_string(c));
            continue;
        }
        if (compound) os << "(" << to_string(c) << ")*";
        else if (c != CycloNum(1)) os << to_string(c) << "*";
        os << "t";
        if (deg != 1) os << "^" << deg;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << to_string(f); }

}  // namespace bk
