#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lf/error.hpp"
#include "lf/series.hpp"

namespace lf {

// Scalar construction hooks; specialised for every scalar type used with
// Poly and Matrix.  `Ctx` is whatever a zero or one needs to be built.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Series> {
    using Ctx = const FiniteField*;
    static Series zero(Ctx F) { return Series::zero(F); }
    static Series one(Ctx F) { return Series::one(F); }
    static Series from_int(Ctx F, long n) { return Series::from_int(F, n); }
    static Ctx ctx(const Series& s) { return s.field(); }
    static bool exact_zero(const Series& s) { return s.is_exact_zero(); }
    static bool maybe_zero(const Series& s) { return s.is_zero(); }
};

// Dense univariate polynomial, lowest degree first.  The top coefficient is
// never an exact zero unless the polynomial is zero (empty).
template <class S>
class Poly {
public:
    using Traits = ScalarTraits<S>;
    using Ctx = typename Traits::Ctx;

    Poly() = default;
    explicit Poly(Ctx ctx) : ctx_(ctx) {}
    Poly(Ctx ctx, std::vector<S> c) : ctx_(ctx), c_(std::move(c)) { trim(); }

    static Poly x(Ctx ctx) { return Poly(ctx, {Traits::zero(ctx), Traits::one(ctx)}); }
    static Poly constant(Ctx ctx, S c) { return Poly(ctx, {std::move(c)}); }
    static Poly monic_from(Ctx ctx, std::vector<S> lower) {
        lower.push_back(Traits::one(ctx));
        return Poly(ctx, std::move(lower));
    }

    Ctx ctx() const { return ctx_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }
    std::vector<S>& coeffs() { return c_; }
    S coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Traits::zero(ctx_); }
    const S& lead() const { return c_.back(); }
    void set(int i, S v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, Traits::zero(ctx_));
        c_[i] = std::move(v);
        trim();
    }
    void trim() {
        while (!c_.empty() && Traits::exact_zero(c_.back())) c_.pop_back();
    }
    // Leading coefficient is certified nonzero (degree is determined).
    bool degree_certified() const { return c_.empty() || !Traits::maybe_zero(c_.back()); }
    // Every coefficient is zero to its precision.
    bool maybe_zero() const {
        for (const auto& a : c_)
            if (!Traits::maybe_zero(a)) return false;
        return true;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        Ctx ctx = a.ctx_ ? a.ctx_ : b.ctx_;
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), Traits::zero(ctx));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Poly(ctx, std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Ctx ctx = a.ctx_ ? a.ctx_ : b.ctx_;
        if (a.c_.empty() || b.c_.empty()) return Poly(ctx);
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, Traits::zero(ctx));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (Traits::exact_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(ctx, std::move(c));
    }
    friend Poly operator*(const S& s, const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = s * x;
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly shifted(int k) const {  // multiply by x^k
        if (c_.empty()) return *this;
        std::vector<S> c(k, Traits::zero(ctx_));
        c.insert(c.end(), c_.begin(), c_.end());
        return Poly(ctx_, std::move(c));
    }

    S eval(const S& x) const {
        S acc = Traits::zero(ctx_);
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }
    template <class R, class Mul, class Add>
    R eval_in(const R& x, R acc, Mul mul_scalar, Add add) const {
        for (int i = degree(); i >= 0; --i) acc = add(mul_scalar(c_[i]), acc * x);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(ctx_);
        std::vector<S> c(c_.size() - 1, Traits::zero(ctx_));
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Traits::from_int(ctx_, static_cast<long>(i)) * c_[i];
        return Poly(ctx_, std::move(c));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    Ctx ctx_{};
    std::vector<S> c_;
};

// Division with remainder.  The divisor's leading coefficient must be
// certified nonzero; leading terms are cancelled structurally.
template <class S>
void divmod(const Poly<S>& a, const Poly<S>& b, Poly<S>& quo, Poly<S>& rem) {
    using Traits = ScalarTraits<S>;
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (!b.degree_certified())
        fail(ErrorKind::InsufficientPrecision, "divisor degree undetermined at working precision");
    auto ctx = a.ctx() ? a.ctx() : b.ctx();
    std::vector<S> r = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) {
        quo = Poly<S>(ctx);
        rem = a;
        return;
    }
    std::vector<S> q(da - db + 1, Traits::zero(ctx));
    const S inv_lead = Traits::one(ctx) / b.lead();
    for (int i = da; i >= db; --i) {
        if (Traits::exact_zero(r[i])) continue;
        S f = r[i] * inv_lead;
        q[i - db] = f;
        for (int j = 0; j < db; ++j) r[i - db + j] = r[i - db + j] - f * b.coeffs()[j];
        r[i] = Traits::zero(ctx);
    }
    r.resize(db, Traits::zero(ctx));
    quo = Poly<S>(ctx, std::move(q));
    rem = Poly<S>(ctx, std::move(r));
}

template <class S>
Poly<S> operator%(const Poly<S>& a, const Poly<S>& b) {
    Poly<S> q, r;
    divmod(a, b, q, r);
    return r;
}

template <class S>
Poly<S> operator/(const Poly<S>& a, const Poly<S>& b) {
    Poly<S> q, r;
    divmod(a, b, q, r);
    return q;
}

template <class S>
Poly<S> make_monic(const Poly<S>& a) {
    if (a.is_zero()) return a;
    const S inv = ScalarTraits<S>::one(a.ctx()) / a.lead();
    Poly<S> r = inv * a;
    auto c = r.coeffs();
    c.back() = ScalarTraits<S>::one(a.ctx());
    return Poly<S>(a.ctx(), std::move(c));
}

// Monic gcd by the Euclidean algorithm.  For inexact scalars a remainder whose
// coefficients are all zero only to precision is an undecidable branch.
template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
    while (!b.is_zero()) {
        if (b.maybe_zero())
            fail(ErrorKind::InsufficientPrecision, "gcd remainder indistinguishable from zero");
        if (!b.degree_certified()) fail(ErrorKind::InsufficientPrecision, "gcd remainder degree undetermined");
        Poly<S> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

using SeriesPoly = Poly<Series>;

// x^k coefficient list helpers for series polynomials.
SeriesPoly series_poly(const FiniteField* F, const std::vector<Series>& coeffs);
SeriesPoly capped(const SeriesPoly& f, int M);
bool is_monic(const SeriesPoly& f);
bool is_exact(const SeriesPoly& f);

std::string to_string(const SeriesPoly& f, const std::string& var = "x");
// Accepts a bracketed coefficient list "[c0, c1, ...]" (lowest first, each a
// series) or a sum of terms like "x^2 - T*x + T^-1".
SeriesPoly parse_poly(const FiniteField* F, std::string_view text);
std::string to_list_string(const SeriesPoly& f);

}  // namespace lf
