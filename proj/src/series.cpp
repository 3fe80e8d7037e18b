#include "lf/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lf {

namespace {

int clamp_prec(long p) { return p >= kExact ? kExact : static_cast<int>(p); }

const FiniteField* pick_field(const Series& a, const Series& b) {
    return a.field() ? a.field() : b.field();
}

}  // namespace

Series Series::zero_at(const FiniteField* F, int prec) {
    Series s(F);
    s.prec_ = clamp_prec(prec);
    s.v_ = 0;
    return s;
}

Series Series::monomial(const FiniteField* F, Fq c, int k, int prec) {
    Series s(F);
    s.prec_ = clamp_prec(prec);
    if (c == 0 || k >= s.prec_) return zero_at(F, prec);
    s.v_ = k;
    s.coeffs_.push_back(c);
    if (!s.is_exact()) s.coeffs_.resize(s.prec_ - k, 0);
    return s;
}

Series Series::from_coeffs(const FiniteField* F, int v, const Coeffs& c, int prec) {
    Series s(F);
    s.prec_ = clamp_prec(prec);
    s.v_ = v;
    s.coeffs_ = c;
    s.normalize();
    return s;
}

void Series::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        v_ = 0;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        v_ += static_cast<int>(lead);
    }
    if (is_exact()) {
        trim_exact();
        return;
    }
    if (v_ >= prec_) {
        coeffs_.clear();
        v_ = 0;
        return;
    }
    coeffs_.resize(prec_ - v_, 0);
}

void Series::trim_exact() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int Series::valuation() const {
    if (!coeffs_.empty()) return v_;
    if (is_exact()) return kExact;
    fail(ErrorKind::InsufficientPrecision, "valuation undetermined: value is O(T^" + std::to_string(prec_) + ")");
}

int Series::rel_precision() const {
    if (is_exact()) return kExact;
    return coeffs_.empty() ? 0 : prec_ - v_;
}

Fq Series::coeff(int k) const {
    if (k >= prec_) fail(ErrorKind::InsufficientPrecision, "coefficient beyond precision");
    if (coeffs_.empty() || k < v_) return 0;
    std::size_t i = static_cast<std::size_t>(k - v_);
    return i < coeffs_.size() ? coeffs_[i] : 0;
}

Fq Series::leading() const {
    if (coeffs_.empty()) fail(ErrorKind::InsufficientPrecision, "leading coefficient of a zero value");
    return coeffs_[0];
}

Series Series::with_precision(int M) const {
    if (M >= prec_) return *this;
    Series s = *this;
    s.prec_ = M;
    if (s.coeffs_.empty()) return s;
    if (s.v_ >= M) {
        s.coeffs_.clear();
        s.v_ = 0;
        return s;
    }
    s.coeffs_.resize(M - s.v_, 0);
    return s;
}

Series Series::shifted(int k) const {
    Series s = *this;
    if (!s.is_exact()) s.prec_ += k;
    if (!s.coeffs_.empty()) s.v_ += k;
    return s;
}

Series Series::exact_part() const {
    if (is_exact()) return *this;
    return from_coeffs(F_, v_, coeffs_);
}

Series Series::low_part(int k) const {
    if (k > prec_) fail(ErrorKind::InsufficientPrecision, "low part beyond precision");
    if (coeffs_.empty() || k <= v_) return Series(F_);
    Coeffs c(coeffs_.begin(), coeffs_.begin() + std::min<long>(static_cast<long>(coeffs_.size()), k - v_));
    return from_coeffs(F_, v_, c);
}

Series Series::scaled(Fq c) const {
    if (c == 0) return Series(F_);
    Series s = *this;
    for (Fq& x : s.coeffs_) x = F_->mul(x, c);
    return s;
}

Series Series::operator-() const {
    Series s = *this;
    for (Fq& x : s.coeffs_) x = F_->neg(x);
    return s;
}

Series operator+(const Series& a, const Series& b) {
    if (a.is_exact_zero()) return b.F_ || !a.F_ ? b : Series::zero_at(a.F_, b.prec_);
    if (b.is_exact_zero()) return a;
    const FiniteField* F = pick_field(a, b);
    const int prec = std::min(a.prec_, b.prec_);
    if (a.coeffs_.empty() && b.coeffs_.empty()) return Series::zero_at(F, prec);
    int lo = kExact;
    if (!a.coeffs_.empty()) lo = std::min(lo, a.v_);
    if (!b.coeffs_.empty()) lo = std::min(lo, b.v_);
    int hi;  // exclusive
    if (prec >= kExact) {
        hi = std::max(a.coeffs_.empty() ? lo : a.degree(), b.coeffs_.empty() ? lo : b.degree()) + 1;
    } else {
        hi = prec;
    }
    if (hi <= lo) return Series::zero_at(F, prec);
    Series s(F);
    s.prec_ = prec;
    s.v_ = lo;
    s.coeffs_.assign(static_cast<std::size_t>(hi - lo), 0);
    for (const Series* x : {&a, &b}) {
        for (std::size_t i = 0; i < x->coeffs_.size(); ++i) {
            int k = x->v_ + static_cast<int>(i);
            if (k >= hi) break;
            Fq& slot = s.coeffs_[static_cast<std::size_t>(k - lo)];
            slot = F->add(slot, x->coeffs_[i]);
        }
    }
    s.normalize();
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series& Series::operator+=(const Series& o) { return *this = *this + o; }
Series& Series::operator-=(const Series& o) { return *this = *this - o; }

Series operator*(const Series& a, const Series& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return Series(pick_field(a, b));
    const FiniteField* F = pick_field(a, b);
    const long pa = a.prec_, pb = b.prec_;
    const long va = a.val_bound(), vb = b.val_bound();
    const int prec = clamp_prec(std::min(pa >= kExact ? 2L * kExact : pa + vb, pb >= kExact ? 2L * kExact : pb + va));
    if (a.coeffs_.empty() || b.coeffs_.empty()) return Series::zero_at(F, prec);
    Series s(F);
    s.prec_ = prec;
    s.v_ = a.v_ + b.v_;
    const int la = static_cast<int>(a.coeffs_.size()), lb = static_cast<int>(b.coeffs_.size());
    int len = prec >= kExact ? la + lb - 1 : prec - s.v_;
    if (len <= 0) return Series::zero_at(F, prec);
    s.coeffs_.assign(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < la && i < len; ++i) {
        Fq ai = a.coeffs_[i];
        if (ai == 0) continue;
        const int lim = std::min(lb, len - i);
        for (int j = 0; j < lim; ++j) {
            Fq bj = b.coeffs_[j];
            if (bj == 0) continue;
            Fq& slot = s.coeffs_[static_cast<std::size_t>(i + j)];
            slot = F->add(slot, F->mul(ai, bj));
        }
    }
    s.normalize();
    return s;
}

Series Series::inverse(int rel_cap) const {
    if (is_exact_zero()) fail(ErrorKind::DivisionByZero, "inverse of exact zero");
    if (coeffs_.empty()) fail(ErrorKind::InsufficientPrecision, "inverse of a value indistinguishable from zero");
    int rel = rel_precision();
    if (rel >= kExact) {
        if (coeffs_.size() == 1) return monomial(F_, F_->inv(coeffs_[0]), -v_);
        if (rel_cap >= kExact)
            fail(ErrorKind::InsufficientPrecision, "inverse of an exact non-monomial series needs a precision cap");
        rel = rel_cap;
    } else {
        rel = std::min(rel, rel_cap);
    }
    Coeffs b(static_cast<std::size_t>(rel), 0);
    const Fq a0inv = F_->inv(coeffs_[0]);
    b[0] = a0inv;
    for (int k = 1; k < rel; ++k) {
        Fq acc = 0;
        const int lim = std::min(k, static_cast<int>(coeffs_.size()) - 1);
        for (int i = 1; i <= lim; ++i) acc = F_->add(acc, F_->mul(coeffs_[i], b[k - i]));
        b[k] = F_->neg(F_->mul(a0inv, acc));
    }
    return from_coeffs(F_, -v_, b, -v_ + rel);
}

Series operator/(const Series& a, const Series& b) {
    if (b.is_exact_zero()) fail(ErrorKind::DivisionByZero, "division by exact zero");
    if (b.coeffs_.empty()) fail(ErrorKind::InsufficientPrecision, "division by a value indistinguishable from zero");
    if (a.is_exact_zero()) return Series(pick_field(a, b));
    if (a.coeffs_.empty()) return Series::zero_at(pick_field(a, b), a.prec_ - b.v_);
    const int cap = a.is_exact() ? kExact : a.rel_precision();
    return a * b.inverse(cap);
}

bool operator==(const Series& a, const Series& b) {
    if (a.coeffs_.empty() != b.coeffs_.empty()) return false;
    if (a.prec_ != b.prec_) return false;
    if (a.coeffs_.empty()) return true;
    return a.v_ == b.v_ && a.coeffs_ == b.coeffs_;
}

bool Series::agrees_with(const Series& o) const { return (*this - o).is_zero(); }

Series Series::frobenius() const {
    if (coeffs_.empty()) {
        Series s = *this;
        if (!is_exact()) s.prec_ = prec_ * F_->p();
        return s;
    }
    const int p = F_->p();
    Series s(F_);
    s.v_ = v_ * p;
    s.prec_ = is_exact() ? kExact : clamp_prec(static_cast<long>(prec_) * p);
    s.coeffs_.assign((coeffs_.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i * p] = F_->frob(coeffs_[i]);
    s.normalize();
    return s;
}

bool Series::is_pth_power() const {
    const int p = F_ ? F_->p() : 2;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0 && (v_ + static_cast<int>(i)) % p != 0) return false;
    return true;
}

Series Series::pth_root() const {
    if (!is_pth_power()) fail(ErrorKind::Precondition, "not a p-th power");
    if (coeffs_.empty()) {
        Series s = *this;
        if (!is_exact()) s.prec_ = (prec_ + F_->p() - 1) / F_->p();
        return s;
    }
    const int p = F_->p();
    Series s(F_);
    auto floordiv = [p](int a) { return a >= 0 ? a / p : -((-a + p - 1) / p); };
    s.v_ = floordiv(v_);
    s.prec_ = is_exact() ? kExact : -floordiv(-prec_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        int k = v_ + static_cast<int>(i);
        if (k % p == 0) s.coeffs_.push_back(F_->root_p(coeffs_[i]));
    }
    s.normalize();
    return s;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string coeff_string(const FiniteField* F, Fq c) {
    if (F->r() == 1) return std::to_string(static_cast<int>(c));
    auto v = F->coords(c);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string monomial_string(const FiniteField* F, Fq c, int k) {
    std::string t;
    if (k != 0) t = k == 1 ? "T" : "T^" + std::to_string(k);
    if (c == 1 && k != 0) return t;
    std::string cs = coeff_string(F, c);
    return k == 0 ? cs : cs + "*" + t;
}

}  // namespace

std::string Series::to_string() const {
    std::string out;
    auto append = [&out](const std::string& term) {
        if (!out.empty()) out += " + ";
        out += term;
    };
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) append(monomial_string(F_, coeffs_[i], v_ + static_cast<int>(i)));
    if (!is_exact()) append("O(T^" + std::to_string(prec_) + ")");
    return out.empty() ? "0" : out;
}

std::string to_string(const Series& s) { return s.to_string(); }

namespace {

class SeriesParser {
public:
    SeriesParser(const FiniteField* F, std::string_view text) : F_(F), s_(text) {}

    Series run() {
        Series acc = Series::zero(F_);
        int prec = kExact;
        skip();
        if (pos_ == s_.size()) error("empty series");
        bool first = true;
        while (pos_ < s_.size()) {
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
                skip();
            } else if (!first) {
                error("expected '+' or '-'");
            }
            first = false;
            if (peek() == 'O') {
                if (negative) error("negative precision term");
                prec = std::min(prec, parse_big_o());
            } else {
                acc += parse_term(negative);
            }
            skip();
        }
        return prec < kExact ? acc.with_precision(prec) : acc;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::Parse, "series parse error at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool eat(char c) {
        skip();
        if (peek() == c) {
            ++pos_;
            skip();
            return true;
        }
        return false;
    }
    long parse_int() {
        skip();
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000000L) error("integer too large");
            ++pos_;
        }
        skip();
        return neg ? -v : v;
    }
    int parse_exponent() {
        if (eat('^')) {
            if (eat('(')) {
                long e = parse_int();
                if (!eat(')')) error("expected ')'");
                return static_cast<int>(e);
            }
            return static_cast<int>(parse_int());
        }
        return 1;
    }
    int parse_big_o() {
        ++pos_;  // 'O'
        if (!eat('(')) error("expected '(' after O");
        if (!eat('T')) error("expected T in O(...)");
        int e = parse_exponent();
        if (!eat(')')) error("expected ')'");
        return e;
    }
    Fq parse_coeff() {
        if (eat('[')) {
            std::vector<int> c;
            if (!eat(']')) {
                do {
                    c.push_back(static_cast<int>(((parse_int() % F_->p()) + F_->p()) % F_->p()));
                } while (eat(','));
                if (!eat(']')) error("expected ']'");
            }
            if (static_cast<int>(c.size()) > F_->r()) error("coordinate vector longer than field degree");
            return F_->from_coords(c);
        }
        long v = parse_int();
        return F_->from_int(v);
    }
    Series parse_term(bool negative) {
        skip();
        Fq c = 1;
        int k = 0;
        bool have_coeff = false;
        if (peek() == '[' || std::isdigit(static_cast<unsigned char>(peek()))) {
            c = parse_coeff();
            have_coeff = true;
            eat('*');
        }
        if (eat('T')) {
            k = parse_exponent();
        } else if (!have_coeff) {
            error("expected coefficient or T");
        }
        if (negative) c = F_->neg(c);
        return Series::monomial(F_, c, k);
    }

    const FiniteField* F_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Series parse_series(const FiniteField* F, std::string_view text) { return SeriesParser(F, text).run(); }

}  // namespace lf
