#include "lf/extension.hpp"

#include <algorithm>

#include "lf/local_poly.hpp"
#include "lf/ratfunc.hpp"

namespace lf {

struct LocalFieldExt::Impl {
    FieldPtr base, upper;
    FieldEmbedding emb;  // used when f > 1
    int e = 1, f = 1, prec = 0;
    bool separable = true;
    SeriesPoly phi;
    std::optional<SeriesPoly> origin;
    std::vector<Series> origin_root;
    std::vector<FqVec> down;  // F_{q^f} element -> coordinates over F_q in powers of g
    std::vector<Fq> gpow;
};

namespace {

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

Series map_coeffs(const Series& s, const FiniteField* target, const auto& fn) {
    if (s.is_exact_zero()) return Series::zero(target);
    if (s.is_zero()) return Series::zero_at(target, s.precision());
    Series::Coeffs c;
    for (Fq x : s.raw()) c.push_back(fn(x));
    return Series::from_coeffs(target, s.raw_start(), c, s.precision());
}

std::shared_ptr<LocalFieldExt::Impl> make_impl(const FiniteField* base, const FiniteField* upper, int f) {
    auto d = std::make_shared<LocalFieldExt::Impl>();
    d->base = base->shared_from_this();
    d->upper = upper->shared_from_this();
    d->f = f;
    if (f > 1) d->emb = FieldEmbedding(d->base, d->upper);
    const int q = base->q();
    const Fq g = upper->gen();
    d->gpow.resize(f);
    for (int a = 0; a < f; ++a) d->gpow[a] = upper->pow(g, static_cast<std::uint64_t>(a));
    d->down.assign(upper->q(), FqVec(f, 0));
    if (f == 1) {
        for (int a = 0; a < q; ++a) d->down[a][0] = static_cast<Fq>(a);
        return d;
    }
    long total = 1;
    for (int a = 0; a < f; ++a) total *= q;
    for (long idx = 0; idx < total; ++idx) {
        FqVec digits(f);
        long t = idx;
        Fq v = 0;
        for (int a = 0; a < f; ++a) {
            digits[a] = static_cast<Fq>(t % q);
            t /= q;
            v = upper->add(v, upper->mul(d->emb(digits[a]), d->gpow[a]));
        }
        d->down[v] = digits;
    }
    return d;
}

// Span of F_q vectors with a membership test.
struct FqSpan {
    const FiniteField* F;
    std::vector<FqVec> rows;
    std::vector<int> piv;
    FqSpan(const FiniteField* field, std::vector<FqVec> gens) : F(field), rows(std::move(gens)) { piv = fq_rref(*F, rows); }
    bool contains(FqVec v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Fq c = v[piv[i]];
            if (c == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = F->sub(v[k], F->mul(c, rows[i][k]));
        }
        return std::all_of(v.begin(), v.end(), [](Fq x) { return x == 0; });
    }
    int dim() const { return static_cast<int>(rows.size()); }
};

}  // namespace

// ---------------------------------------------------------------------------

LocalFieldExt LocalFieldExt::from_eisenstein(const FiniteField* base, int f, const SeriesPoly& phi, bool separable, int prec) {
    require(f >= 1, "residue degree must be positive");
    require(phi.ctx()->p() == base->p() && phi.ctx()->r() == base->r() * f, "Eisenstein polynomial over the wrong residue field");
    auto d = make_impl(base, phi.ctx(), f);
    d->e = phi.degree();
    d->prec = prec;
    d->separable = separable;
    // The leading coefficient stays exact so phi remains monic.
    std::vector<Series> c = capped(phi, prec).coeffs();
    c.back() = Series::one(phi.ctx());
    d->phi = SeriesPoly(phi.ctx(), std::move(c));
    if (!is_eisenstein(phi)) fail(ErrorKind::Precondition, "polynomial is not Eisenstein");
    return LocalFieldExt(d);
}

const FiniteField* LocalFieldExt::base() const { return d_->base.get(); }
const FiniteField* LocalFieldExt::residue() const { return d_->upper.get(); }
Fq LocalFieldExt::embed(Fq a) const { return d_->f == 1 ? a : d_->emb(a); }
int LocalFieldExt::e() const { return d_->e; }
int LocalFieldExt::f() const { return d_->f; }
int LocalFieldExt::precision() const { return d_->prec; }
bool LocalFieldExt::separable() const { return d_->separable; }
const SeriesPoly& LocalFieldExt::eisenstein() const { return d_->phi; }
const std::optional<SeriesPoly>& LocalFieldExt::origin() const { return d_->origin; }

Series LocalFieldExt::upper_from_base(const Series& a) const {
    if (d_->f == 1) return a;
    return map_coeffs(a, residue(), [this](Fq x) { return d_->emb(x); });
}

ExtElem LocalFieldExt::zero() const { return ExtElem(*this, std::vector<Series>(e(), Series::zero(residue()))); }

ExtElem LocalFieldExt::one() const {
    std::vector<Series> c(e(), Series::zero(residue()));
    c[0] = Series::one(residue());
    return ExtElem(*this, std::move(c));
}

ExtElem LocalFieldExt::uniformizer() const {
    if (e() == 1) return from_base(Series::monomial(base(), 1, 1));
    std::vector<Series> c(e(), Series::zero(residue()));
    c[1] = Series::one(residue());
    return ExtElem(*this, std::move(c));
}

ExtElem LocalFieldExt::from_base(const Series& a) const { return from_upper(upper_from_base(a)); }

ExtElem LocalFieldExt::from_upper(const Series& a) const {
    std::vector<Series> c(e(), Series::zero(residue()));
    c[0] = a;
    return ExtElem(*this, std::move(c));
}

std::optional<ExtElem> LocalFieldExt::origin_root() const {
    if (d_->origin_root.empty()) return std::nullopt;
    return ExtElem(*this, d_->origin_root);
}

Vec LocalFieldExt::coords(const ExtElem& x) const {
    const int f = this->f();
    Vec out(n(), Series::zero(base()));
    for (int b = 0; b < e(); ++b) {
        const Series& c = x.coeffs()[b];
        if (f == 1) {
            out[b] = c;
            continue;
        }
        for (int a = 0; a < f; ++a) {
            if (c.is_zero()) {
                out[b * f + a] = c.is_exact_zero() ? Series::zero(base()) : Series::zero_at(base(), c.precision());
                continue;
            }
            Series::Coeffs part;
            for (Fq v : c.raw()) part.push_back(d_->down[v][a]);
            out[b * f + a] = Series::from_coeffs(base(), c.raw_start(), part, c.precision());
        }
    }
    return out;
}

ExtElem LocalFieldExt::from_coords(const Vec& v) const {
    const int f = this->f();
    std::vector<Series> c(e(), Series::zero(residue()));
    for (int b = 0; b < e(); ++b)
        for (int a = 0; a < f; ++a) {
            const Series& s = v[b * f + a];
            if (s.is_exact_zero()) continue;
            c[b] += upper_from_base(s).scaled(d_->gpow[a]);
        }
    return ExtElem(*this, std::move(c));
}

SeriesMatrix LocalFieldExt::regular_rep(const ExtElem& x) const {
    SeriesMatrix M(base(), n(), n());
    for (int k = 0; k < n(); ++k) {
        std::vector<Series> c(e(), Series::zero(residue()));
        c[level(k)] = Series::constant(residue(), d_->gpow[k % f()]);
        M.set_col(k, coords(x * ExtElem(*this, std::move(c))));
    }
    return M;
}

std::vector<int> LocalFieldExt::ideal_exponents(int k) const {
    std::vector<int> out(n());
    for (int i = 0; i < n(); ++i) out[i] = ceil_div(k - level(i), e());
    return out;
}

SeriesPoly LocalFieldExt::twisted_eisenstein(int j) const {
    if (j == 0) return d_->phi;
    std::uint64_t qj = 1;
    for (int i = 0; i < j; ++i) qj *= static_cast<std::uint64_t>(base()->q());
    const FiniteField* U = residue();
    std::vector<Series> c;
    for (const auto& a : d_->phi.coeffs()) c.push_back(map_coeffs(a, U, [U, qj](Fq x) { return U->pow(x, qj); }));
    return SeriesPoly(U, std::move(c));
}

// ---------------------------------------------------------------------------

ExtElem::ExtElem(LocalFieldExt E, std::vector<Series> c) : E_(std::move(E)), c_(std::move(c)) {
    const int M = E_.precision();
    for (auto& s : c_) s = s.capped(M);
}

int ExtElem::val_bound() const {
    const int e = E_.e();
    int v = kExact;
    for (int i = 0; i < e; ++i) {
        if (c_[i].is_exact_zero()) continue;
        v = std::min(v, e * c_[i].val_bound() + i);
    }
    return v;
}

bool ExtElem::certified_nonzero() const {
    return std::any_of(c_.begin(), c_.end(), [](const Series& s) { return s.certified_nonzero(); });
}

int ExtElem::valuation() const {
    const int e = E_.e();
    int best = kExact, bound = kExact;
    bool exact_zero = true;
    for (int i = 0; i < e; ++i) {
        const Series& s = c_[i];
        if (s.is_exact_zero()) continue;
        exact_zero = false;
        if (s.certified_nonzero()) {
            best = std::min(best, e * s.valuation() + i);
        } else {
            bound = std::min(bound, e * s.precision() + i);
        }
    }
    if (exact_zero) return kExact;
    if (best < bound) return best;
    fail(ErrorKind::InsufficientPrecision, "valuation in the extension undetermined at this precision");
}

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
    std::vector<Series> c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return ExtElem(a.E_, std::move(c));
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
    std::vector<Series> c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return ExtElem(a.E_, std::move(c));
}

ExtElem ExtElem::operator-() const {
    std::vector<Series> c = c_;
    for (auto& s : c) s = -s;
    return ExtElem(E_, std::move(c));
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
    const int e = a.E_.e();
    const int M = a.E_.precision();
    const FiniteField* U = a.E_.residue();
    std::vector<Series> prod(2 * e - 1, Series::zero(U));
    for (int i = 0; i < e; ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (int j = 0; j < e; ++j)
            if (!b.c_[j].is_exact_zero()) prod[i + j] += (a.c_[i] * b.c_[j]).capped(M);
    }
    const SeriesPoly& phi = a.E_.eisenstein();
    for (int k = 2 * e - 2; k >= e; --k) {
        const Series c = prod[k];
        if (c.is_exact_zero()) continue;
        for (int i = 0; i < e; ++i)
            if (!phi.coeff(i).is_exact_zero()) prod[k - e + i] = (prod[k - e + i] - c * phi.coeff(i)).capped(M);
    }
    prod.resize(e);
    return ExtElem(a.E_, std::move(prod));
}

ExtElem ExtElem::inverse() const {
    if (!certified_nonzero()) {
        if (std::all_of(c_.begin(), c_.end(), [](const Series& s) { return s.is_exact_zero(); }))
            fail(ErrorKind::DivisionByZero, "inverse of zero in an extension");
        fail(ErrorKind::InsufficientPrecision, "inverse of an element indistinguishable from zero");
    }
    const int e = E_.e();
    const FiniteField* U = E_.residue();
    SeriesMatrix M(U, e, e);
    ExtElem p = *this;
    const ExtElem pi = e > 1 ? E_.uniformizer() : E_.one();
    for (int j = 0; j < e; ++j) {
        M.set_col(j, p.c_);
        if (j + 1 < e) p = p * pi;
    }
    std::vector<Series> rhs(e, Series::zero(U));
    rhs[0] = Series::one(U);
    return ExtElem(E_, solve(M, rhs, E_.precision()));
}

ExtElem ExtElem::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    ExtElem r = E_.one(), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

// ---------------------------------------------------------------------------

LocalFieldExt extension_of_component(const EtaleAlgebra& A, int component, bool separable) {
    const auto& comp = A.components().at(component);
    const FiniteField* F = A.field();
    const int M = A.precision();
    const int e = comp.e, f = comp.f, n = comp.degree;
    const Vec& eps = comp.idempotent;
    const FqAlgebra& R = A.residue();
    const FqVec eps_bar = A.reduce(eps);

    std::vector<FqVec> Jg;
    for (const auto& r : A.radical()) Jg.push_back(R.mul(eps_bar, r));
    FqSpan J(F, Jg);

    // Uniformizer.
    Vec pi;
    if (e == 1) {
        pi = eps;
        for (auto& s : pi) s = s.shifted(1).capped(M);
    } else {
        std::vector<FqVec> sq;
        for (const auto& a : J.rows)
            for (const auto& b : J.rows) sq.push_back(R.mul(a, b));
        FqSpan J2(F, sq);
        const FqVec* pick = nullptr;
        for (const auto& a : J.rows)
            if (!J2.contains(a)) {
                pick = &a;
                break;
            }
        if (!pick) fail(ErrorKind::FactorizationIncomplete, "no uniformizer found in the component");
        pi = A.mul(A.lift(*pick), eps, M);
    }

    // Residue field of E and the unramified part.
    FieldPtr upper = f == 1 ? F->shared_from_this() : FiniteField::make(F->p(), F->r() * f);
    auto d = make_impl(F, upper.get(), f);
    d->e = e;
    d->prec = M;
    d->separable = separable;
    d->origin = comp.factor;

    Vec zeta = eps;
    if (f > 1) {
        // Minimal polynomial of g over F_q, then a root of it in O/p_E.
        const FiniteField* U = upper.get();
        std::vector<Fq> m = {1};  // over U, lowest first
        std::uint64_t qa = 1;
        for (int j = 0; j < f; ++j) {
            const Fq root = U->pow(U->gen(), qa);
            std::vector<Fq> next(m.size() + 1, 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                next[i + 1] = U->add(next[i + 1], m[i]);
                next[i] = U->sub(next[i], U->mul(root, m[i]));
            }
            m = std::move(next);
            qa *= static_cast<std::uint64_t>(F->q());
        }
        std::vector<Fq> mb(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!d->emb.preimage(m[i], mb[i])) fail(ErrorKind::Precondition, "minimal polynomial not over the base field");

        std::vector<FqVec> gens;
        FqSpan acc(F, Jg);
        for (int k = 0; k < A.degree() && static_cast<int>(gens.size()) < f; ++k) {
            FqVec bk(A.degree(), 0);
            bk[k] = 1;
            FqVec v = R.mul(eps_bar, bk);
            if (acc.contains(v)) continue;
            gens.push_back(v);
            std::vector<FqVec> rows = acc.rows;
            rows.push_back(v);
            acc = FqSpan(F, rows);
        }
        const int q = F->q();
        long total = 1;
        for (int a = 0; a < f; ++a) total *= q;
        std::optional<FqVec> root;
        for (long idx = 1; idx < total && !root; ++idx) {
            FqVec a(A.degree(), 0);
            long t = idx;
            for (int k = 0; k < f; ++k) {
                a = R.add(a, R.scale(static_cast<Fq>(t % q), gens[k]));
                t /= q;
            }
            FqVec val = R.scale(mb[f], eps_bar);
            for (int i = f - 1; i >= 0; --i) val = R.add(R.mul(val, a), R.scale(mb[i], eps_bar));
            if (J.contains(val)) root = a;
        }
        if (!root) fail(ErrorKind::FactorizationIncomplete, "residue field generator not found");
        Vec u = A.mul(A.lift(*root), eps, M);
        const unsigned long qf = static_cast<unsigned long>(total);
        for (int it = 0;; ++it) {
            if (it > 64) fail(ErrorKind::NonConvergence, "Teichmuller lift did not converge");
            Vec nx = A.pow(u, qf, M);
            bool same = true;
            for (int k = 0; k < A.degree(); ++k)
                if (!(nx[k] - u[k]).is_zero()) same = false;
            u = std::move(nx);
            if (same) break;
        }
        zeta = std::move(u);
    }

    // Basis zeta^a pi^b of the component's maximal order.
    std::vector<Vec> zp(f), basis(n);
    zp[0] = eps;
    for (int a = 1; a < f; ++a) zp[a] = A.mul(zp[a - 1], zeta, M);
    Vec pib = eps;
    for (int b = 0; b < e; ++b) {
        for (int a = 0; a < f; ++a) basis[b * f + a] = A.mul(zp[a], pib, M);
        pib = A.mul(pib, pi, M);
    }
    const FiniteField* U = upper.get();
    auto to_upper = [&](const Vec& coords) {
        std::vector<Series> out(e, Series::zero(U));
        for (int b = 0; b < e; ++b)
            for (int a = 0; a < f; ++a) {
                Series s = coords[b * f + a];
                if (s.is_exact_zero()) continue;
                Series up = f == 1 ? s : map_coeffs(s, U, [&](Fq x) { return d->emb(x); });
                out[b] += up.scaled(d->gpow[a]);
            }
        return out;
    };
    // pib now holds pi^e.
    std::vector<Series> rel = to_upper(solve_in_summand(basis, pib, M));
    std::vector<Series> phi(e + 1, Series::zero(U));
    for (int b = 0; b < e; ++b) phi[b] = -rel[b];
    phi[e] = Series::one(U);
    d->phi = SeriesPoly(U, std::move(phi));
    if (!is_eisenstein(d->phi)) fail(ErrorKind::InsufficientPrecision, "uniformizer relation not certified Eisenstein");
    d->origin_root = to_upper(solve_in_summand(basis, A.mul(A.gen(), eps, M), M));
    return LocalFieldExt(d);
}

LocalFieldExt build_extension(const SeriesPoly& phi, int prec) {
    if (!is_monic(phi)) fail(ErrorKind::Precondition, "defining polynomial must be monic");
    bool separable;
    if (is_exact(phi)) {
        if (!is_squarefree(phi)) fail(ErrorKind::NotIrreducible, "defining polynomial has a repeated factor");
        const SeriesPoly dphi = phi.derivative();
        separable = std::any_of(dphi.coeffs().begin(), dphi.coeffs().end(), [](const Series& s) { return !s.is_exact_zero(); });
    } else {
        const SeriesPoly dphi = phi.derivative();
        separable = std::any_of(dphi.coeffs().begin(), dphi.coeffs().end(), [](const Series& s) { return s.certified_nonzero(); });
        if (!separable && !std::all_of(dphi.coeffs().begin(), dphi.coeffs().end(), [](const Series& s) { return s.is_exact_zero(); }))
            fail(ErrorKind::InsufficientPrecision, "separability undetermined at this precision");
    }
    EtaleAlgebra A(phi, prec);
    if (A.components().size() != 1) fail(ErrorKind::NotIrreducible, "defining polynomial is reducible");
    return extension_of_component(A, 0, separable);
}

// ---------------------------------------------------------------------------

namespace {

struct Evaluated {
    ExtElem value, deriv;
};

Evaluated horner(const std::vector<Series>& h, const ExtElem& z) {
    const LocalFieldExt& E = z.parent();
    ExtElem v = E.zero(), dv = E.zero();
    for (int i = static_cast<int>(h.size()) - 1; i >= 0; --i) {
        dv = dv * z + v;
        v = v * z + E.from_upper(h[i]);
    }
    return {v, dv};
}

}  // namespace

std::vector<ExtElem> roots_in_extension(const SeriesPoly& psi, const LocalFieldExt& E, bool upper) {
    if (!is_monic(psi)) fail(ErrorKind::Precondition, "root search needs a monic polynomial");
    const FiniteField* U = E.residue();
    const int deg = psi.degree();
    std::vector<Series> h;
    for (const auto& c : psi.coeffs()) {
        if (upper) {
            require(c.is_exact_zero() || c.field()->same_as(*U), "coefficients over the wrong field");
            h.push_back(c.is_exact_zero() ? Series::zero(U) : map_coeffs(c, U, [](Fq x) { return x; }));
        } else {
            h.push_back(E.upper_from_base(c.is_exact_zero() ? Series::zero(E.base()) : c));
        }
    }
    // Scale so the roots are integral: z = T^s y.
    int s = 0;
    for (int i = 0; i < deg; ++i)
        if (!h[i].is_exact_zero()) s = std::max(s, ceil_div(-h[i].val_bound(), deg - i));
    for (int i = 0; i < deg; ++i)
        if (!h[i].is_exact_zero()) h[i] = h[i].shifted(s * (deg - i));

    const int e = E.e();
    const int limit = e * E.precision() / 2;
    std::vector<Fq> digits;
    for (int a = 0; a < U->q(); ++a) digits.push_back(static_cast<Fq>(a));
    const ExtElem pi = E.uniformizer();

    std::vector<ExtElem> found;
    std::vector<ExtElem> frontier = {E.zero()};
    ExtElem pik = E.one();  // pi^k
    bool stalled = false;
    for (int k = 0; !frontier.empty(); ++k) {
        if (k > limit) {
            if (stalled) fail(ErrorKind::InseparableRootSearch, "root lifting stalls: derivative vanishes at precision");
            fail(ErrorKind::InsufficientPrecision, "root search did not separate the roots at this precision");
        }
        std::vector<ExtElem> next;
        for (const auto& z0 : frontier)
            for (Fq c : digits) {
                ExtElem z = c == 0 ? z0 : z0 + E.from_upper(Series::constant(U, c)) * pik;
                Evaluated ev = horner(h, z);
                const int v = ev.value.val_bound();
                if (v < k + 1) continue;
                if (ev.deriv.certified_nonzero()) {
                    int dv;
                    try {
                        dv = ev.deriv.valuation();
                    } catch (const Error&) {
                        next.push_back(z);
                        continue;
                    }
                    // The class mod pi^{k+1} must sit inside the uniqueness disk.
                    if (v > 2 * dv && k + 1 > dv && v - dv >= k + 1) {
                        // Newton refinement to working precision.
                        for (int it = 0; it < 40 && ev.value.certified_nonzero(); ++it) {
                            z = z - ev.value / ev.deriv;
                            ev = horner(h, z);
                        }
                        found.push_back(z);
                        continue;
                    }
                } else {
                    stalled = true;
                }
                next.push_back(z);
            }
        frontier = std::move(next);
        pik = pik * pi;
    }
    if (s != 0) {
        const ExtElem scale = E.from_base(Series::monomial(E.base(), 1, -s));
        for (auto& z : found) z = z * scale;
    }
    return found;
}

int automorphism_count(const LocalFieldExt& E) {
    int w = 0;
    for (int j = 0; j < E.f(); ++j) w += static_cast<int>(roots_in_extension(E.twisted_eisenstein(j), E, true).size());
    return w;
}

bool is_isomorphic(const LocalFieldExt& a, const LocalFieldExt& b) {
    if (!a.base()->same_as(*b.base())) fail(ErrorKind::Precondition, "extensions of different base fields");
    if (a.e() != b.e() || a.f() != b.f() || a.separable() != b.separable()) return false;
    for (int j = 0; j < a.f(); ++j)
        if (!roots_in_extension(a.twisted_eisenstein(j), b, true).empty()) return true;
    return false;
}

std::optional<int> different_exponent(const LocalFieldExt& E) {
    if (!E.separable()) return std::nullopt;
    if (E.e() == 1) return 0;
    const SeriesPoly dphi = E.eisenstein().derivative();
    std::vector<Series> c = dphi.coeffs();
    ExtElem v = E.zero();
    const ExtElem pi = E.uniformizer();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * pi + E.from_upper(c[i]);
    return v.valuation();
}

RamificationReport ramification_report(const LocalFieldExt& E) {
    RamificationReport r;
    r.e = E.e();
    r.f = E.f();
    r.n = E.n();
    r.separable = E.separable();
    if (!r.separable) return r;
    r.d = different_exponent(E);
    r.delta = E.f() * *r.d;
    r.sigma = *r.d - (E.e() - 1);
    r.w = automorphism_count(E);
    return r;
}

}  // namespace lf
