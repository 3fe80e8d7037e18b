#include "lf/ratfunc.hpp"

#include <algorithm>

namespace lf {

FqPoly::FqPoly(const FiniteField* field, std::vector<Fq> coeffs) : F(field), c(std::move(coeffs)) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

FqPoly FqPoly::monomial(const FiniteField* F, Fq a, int k) {
    std::vector<Fq> v(k + 1, 0);
    v[k] = a;
    return FqPoly(F, std::move(v));
}

int FqPoly::low_order() const {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<int>(i);
    return 0;
}

bool FqPoly::is_monomial() const { return !c.empty() && low_order() == degree(); }

FqPoly FqPoly::derivative() const {
    if (c.size() <= 1) return FqPoly(F, {});
    std::vector<Fq> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = F->mul(F->from_int(static_cast<long>(i)), c[i]);
    return FqPoly(F, std::move(d));
}

bool FqPoly::is_pth_power() const {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0 && i % F->p() != 0) return false;
    return true;
}

FqPoly FqPoly::pth_root() const {
    const std::size_t p = F->p();
    std::vector<Fq> r;
    for (std::size_t i = 0; i < c.size(); i += p) r.push_back(F->root_p(c[i]));
    return FqPoly(F, std::move(r));
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    const FiniteField* F = a.F ? a.F : b.F;
    std::vector<Fq> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] = F->add(c[i], b.c[i]);
    return FqPoly(F, std::move(c));
}

FqPoly operator-(const FqPoly& a) {
    FqPoly r = a;
    for (auto& x : r.c) x = a.F->neg(x);
    return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) { return a + (-b); }

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    const FiniteField* F = a.F ? a.F : b.F;
    if (a.is_zero() || b.is_zero()) return FqPoly(F, {});
    std::vector<Fq> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = F->add(c[i + j], F->mul(a.c[i], b.c[j]));
    }
    return FqPoly(F, std::move(c));
}

void divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    const FiniteField* F = b.F;
    std::vector<Fq> rem = a.c;
    const int db = b.degree();
    if (a.degree() < db) {
        q = FqPoly(F, {});
        r = a;
        r.F = F;
        return;
    }
    std::vector<Fq> quo(a.degree() - db + 1, 0);
    const Fq inv = F->inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        Fq f = F->mul(rem[i], inv);
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = F->sub(rem[i - db + j], F->mul(f, b.c[j]));
    }
    rem.resize(db);
    q = FqPoly(F, std::move(quo));
    r = FqPoly(F, std::move(rem));
}

FqPoly make_monic(const FqPoly& a) {
    if (a.is_zero()) return a;
    FqPoly r = a;
    const Fq inv = a.F->inv(a.lead());
    for (auto& x : r.c) x = a.F->mul(x, inv);
    return r;
}

FqPoly gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

RatFunc::RatFunc(FqPoly num, FqPoly den) {
    if (den.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
    const FiniteField* F = den.F;
    num.F = F;
    if (num.is_zero()) {
        num_ = FqPoly(F, {});
        den_ = FqPoly::constant(F, 1);
        return;
    }
    FqPoly g = gcd(num, den);
    if (g.degree() > 0) {
        FqPoly q, r;
        divmod(num, g, q, r);
        num = q;
        divmod(den, g, q, r);
        den = q;
    }
    const Fq inv = F->inv(den.lead());
    for (auto& x : num.c) x = F->mul(x, inv);
    for (auto& x : den.c) x = F->mul(x, inv);
    num_ = std::move(num);
    den_ = std::move(den);
}

RatFunc RatFunc::from_series(const Series& s) {
    const FiniteField* F = s.field();
    require(F != nullptr, "series without field");
    if (!s.is_exact()) fail(ErrorKind::Precondition, "exact rational arithmetic needs exact input");
    if (s.is_exact_zero()) return RatFunc(F);
    const int v = s.raw_start();
    std::vector<Fq> c(s.raw().begin(), s.raw().end());
    if (v >= 0) {
        c.insert(c.begin(), static_cast<std::size_t>(v), 0);
        return RatFunc(FqPoly(F, std::move(c)), FqPoly::constant(F, 1));
    }
    return RatFunc(FqPoly(F, std::move(c)), FqPoly::monomial(F, 1, -v));
}

Series RatFunc::to_series(int prec) const {
    const FiniteField* F = field();
    if (num_.is_zero()) return Series::zero(F);
    Series::Coeffs nc(num_.c.begin(), num_.c.end());
    Series n = Series::from_coeffs(F, 0, nc);
    if (den_.is_monomial()) return n.shifted(-den_.degree()).scaled(F->inv(den_.lead()));
    Series::Coeffs dc(den_.c.begin(), den_.c.end());
    Series d = Series::from_coeffs(F, 0, dc);
    const int vd = d.valuation();
    const int rel = std::max(1, prec - n.valuation() + vd);
    return (n * d.inverse(rel)).capped(prec);
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.field() ? a.field() : b.field());
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatPoly to_ratpoly(const SeriesPoly& f) {
    std::vector<RatFunc> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) {
        RatFunc r = RatFunc::from_series(a.field() ? a : Series::zero(f.ctx()));
        c.push_back(r);
    }
    return RatPoly(f.ctx(), std::move(c));
}

Matrix<RatFunc> to_ratmatrix(const SeriesMatrix& m) {
    Matrix<RatFunc> r(m.ctx(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = RatFunc::from_series(m(i, j).field() ? m(i, j) : Series::zero(m.ctx()));
    return r;
}

SeriesPoly to_seriespoly(const RatPoly& f, int prec) {
    std::vector<Series> c;
    for (const auto& a : f.coeffs()) c.push_back(a.to_series(prec));
    return SeriesPoly(f.ctx(), std::move(c));
}

namespace {

RatPoly d_dT(const RatPoly& f) {
    std::vector<RatFunc> c;
    for (const auto& a : f.coeffs()) c.push_back(a.derivative());
    return RatPoly(f.ctx(), std::move(c));
}

RatPoly pth_root(const RatPoly& f) {
    const int p = f.ctx()->p();
    std::vector<RatFunc> c;
    for (int i = 0; i <= f.degree(); i += p) {
        if (!f.coeffs()[i].is_pth_power()) fail(ErrorKind::Precondition, "coefficient is not a p-th power");
        c.push_back(f.coeffs()[i].pth_root());
    }
    return RatPoly(f.ctx(), std::move(c));
}

}  // namespace

std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f0) {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly f = make_monic(f0);
    if (f.degree() <= 0) return out;
    RatPoly c = poly_gcd(poly_gcd(f, f.derivative()), d_dT(f));
    RatPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        RatPoly y = poly_gcd(w, c);
        RatPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z, i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        const int p = f.ctx()->p();
        for (auto& [g, m] : squarefree_decomposition(pth_root(c))) out.emplace_back(g, m * p);
    }
    return out;
}

bool is_squarefree(const SeriesPoly& f) {
    if (!is_exact(f)) fail(ErrorKind::Precondition, "squarefree test needs exact coefficients");
    auto parts = squarefree_decomposition(to_ratpoly(f));
    for (const auto& pr : parts)
        if (pr.second > 1) return false;
    return true;
}

}  // namespace lf
