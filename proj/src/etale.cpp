#include "lf/etale.hpp"

#include <algorithm>

namespace lf {

namespace {

constexpr int kRound2Cap = 64;

Vec zeros(const FiniteField* F, int n) { return Vec(n, Series::zero(F)); }

// Quotient of a finite algebra by an ideal given by a basis; elements of the
// quotient are coordinates on the complement positions.
struct Quotient {
    const FqAlgebra* R = nullptr;
    std::vector<FqVec> ideal;  // rref
    std::vector<int> piv, comp;

    Quotient(const FqAlgebra& alg, std::vector<FqVec> rows) : R(&alg), ideal(std::move(rows)) {
        piv = fq_rref(*R->F, ideal);
        std::vector<bool> used(R->n, false);
        for (int c : piv) used[c] = true;
        for (int i = 0; i < R->n; ++i)
            if (!used[i]) comp.push_back(i);
    }
    int dim() const { return static_cast<int>(comp.size()); }
    FqVec reduce(FqVec v) const {
        const FiniteField& F = *R->F;
        for (std::size_t i = 0; i < ideal.size(); ++i) {
            const Fq c = v[piv[i]];
            if (c == 0) continue;
            for (int k = 0; k < R->n; ++k) v[k] = F.sub(v[k], F.mul(c, ideal[i][k]));
        }
        FqVec out(comp.size());
        for (std::size_t a = 0; a < comp.size(); ++a) out[a] = v[comp[a]];
        return out;
    }
    FqVec embed(const FqVec& w) const {
        FqVec v(R->n, 0);
        for (std::size_t a = 0; a < comp.size(); ++a) v[comp[a]] = w[a];
        return v;
    }
    FqAlgebra algebra() const {
        FqAlgebra S;
        S.F = R->F;
        S.n = dim();
        S.table.assign(S.n, std::vector<FqVec>(S.n));
        for (int a = 0; a < S.n; ++a)
            for (int b = 0; b < S.n; ++b) {
                FqVec x(R->n, 0), y(R->n, 0);
                x[comp[a]] = 1;
                y[comp[b]] = 1;
                S.table[a][b] = reduce(R->mul(x, y));
            }
        S.unit = reduce(R->unit);
        return S;
    }
};

bool is_zero_vec(const FqVec& v) {
    return std::all_of(v.begin(), v.end(), [](Fq c) { return c == 0; });
}

int mult_rank(const FqAlgebra& A, const FqVec& a) {
    std::vector<FqVec> rows(A.n, FqVec(A.n, 0));
    for (int j = 0; j < A.n; ++j) {
        FqVec b(A.n, 0);
        b[j] = 1;
        FqVec c = A.mul(a, b);
        for (int i = 0; i < A.n; ++i) rows[i][j] = c[i];
    }
    return fq_rank(*A.F, rows);
}

// Primitive idempotents of a semisimple commutative F_q-algebra, via the
// Berlekamp subalgebra {a : a^q = a}.
std::vector<FqVec> primitive_idempotents(const FqAlgebra& S) {
    const FiniteField& F = *S.F;
    std::vector<FqVec> rows = S.frobenius_rows(1);
    for (int i = 0; i < S.n; ++i) rows[i][i] = F.sub(rows[i][i], 1);
    std::vector<FqVec> fixed = fq_kernel(F, rows, S.n);
    const std::size_t r = fixed.size();
    std::vector<FqVec> idem = {S.unit};
    for (const auto& a : fixed) {
        if (idem.size() == r) break;
        std::vector<FqVec> next;
        for (const auto& e : idem) {
            for (int c = 0; c < F.q(); ++c) {
                FqVec t = a;
                t = S.add(t, S.scale(F.neg(static_cast<Fq>(c)), S.unit));
                FqVec ec = S.add(S.unit, S.scale(F.neg(1), S.pow(t, static_cast<unsigned long>(F.q() - 1))));
                ec = S.mul(ec, e);
                if (!is_zero_vec(ec)) next.push_back(ec);
            }
        }
        idem = std::move(next);
    }
    if (idem.size() != r) fail(ErrorKind::FactorizationIncomplete, "idempotent splitting did not separate all components");
    return idem;
}

}  // namespace

EtaleAlgebra::EtaleAlgebra(const SeriesPoly& chi, int prec) : F_(chi.ctx()), n_(chi.degree()), prec_(prec), chi_(chi) {
    if (!is_monic(chi)) fail(ErrorKind::Precondition, "algebra modulus must be monic");
    require(n_ >= 1, "algebra modulus of degree 0");
    maximize();
    split();
}

Vec EtaleAlgebra::power_mul(const Vec& a, const Vec& b) const {
    Vec prod(2 * n_ - 1, Series::zero(F_));
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_exact_zero()) continue;
        for (int j = 0; j < n_; ++j)
            if (!b[j].is_exact_zero()) prod[i + j] += a[i] * b[j];
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        const Series c = prod[k];
        if (c.is_exact_zero()) continue;
        for (int i = 0; i < n_; ++i)
            if (!chi_.coeff(i).is_exact_zero()) prod[k - n_ + i] -= c * chi_.coeff(i);
    }
    prod.resize(n_);
    return prod;
}

void EtaleAlgebra::build_table() {
    const SeriesMatrix& B = order_.basis();
    std::vector<Vec> w(n_);
    for (int i = 0; i < n_; ++i) w[i] = B.col(i);
    table_.assign(n_, std::vector<Vec>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            table_[i][j] = to_order(power_mul(w[i], w[j]));
            table_[j][i] = table_[i][j];
        }
    Vec e1 = zeros(F_, n_);
    e1[0] = Series::one(F_);
    one_ = to_order(e1);
    Vec x = zeros(F_, n_);
    if (n_ > 1) {
        x[1] = Series::one(F_);
    } else {
        x[0] = -chi_.coeff(0);
    }
    gen_ = to_order(x);

    res_.F = F_;
    res_.n = n_;
    res_.table.assign(n_, std::vector<FqVec>(n_, FqVec(n_, 0)));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) res_.table[i][j] = reduce(table_[i][j]);
    res_.unit = reduce(one_);
}

FqVec EtaleAlgebra::reduce(const Vec& v) const {
    FqVec out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_exact_zero()) continue;
        if (v[i].val_bound() < 0) {
            if (v[i].certified_nonzero()) fail(ErrorKind::Precondition, "reduction of a non-integral element");
            fail(ErrorKind::InsufficientPrecision, "element not known modulo T");
        }
        out[i] = v[i].coeff(0);
    }
    return out;
}

Vec EtaleAlgebra::lift(const FqVec& v) const {
    Vec out(v.size(), Series::zero(F_));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[i] = Series::constant(F_, v[i]);
    return out;
}

Vec EtaleAlgebra::mul(const Vec& a, const Vec& b, int cap) const {
    Vec out = zeros(F_, n_);
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_exact_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[j].is_exact_zero()) continue;
            const Series ab = (a[i] * b[j]).capped(cap);
            const Vec& t = table_[i][j];
            for (int k = 0; k < n_; ++k)
                if (!t[k].is_exact_zero()) out[k] += ab * t[k];
        }
    }
    if (cap < kExact)
        for (auto& c : out) c = c.capped(cap);
    return out;
}

Vec EtaleAlgebra::pow(Vec a, unsigned long e, int cap) const {
    Vec r = one_;
    while (e) {
        if (e & 1) r = mul(r, a, cap);
        e >>= 1;
        if (e) a = mul(a, a, cap);
    }
    return r;
}

SeriesMatrix EtaleAlgebra::mult_matrix(const Vec& a) const {
    SeriesMatrix M(F_, n_, n_);
    for (int j = 0; j < n_; ++j) {
        Vec ej = zeros(F_, n_);
        ej[j] = Series::one(F_);
        M.set_col(j, mul(ej, a));
    }
    return M;
}

void EtaleAlgebra::maximize() {
    // Start from o[T^s x] with T^s x integral.
    int s = 0;
    for (int i = 0; i < n_; ++i) {
        const Series& c = chi_.coeff(i);
        if (c.is_exact_zero()) continue;
        const int v = c.val_bound();
        if (v < 0) s = std::max(s, (-v + (n_ - i) - 1) / (n_ - i));
    }
    std::vector<int> exps(n_);
    for (int i = 0; i < n_; ++i) exps[i] = s * i;
    order_ = Lattice::diagonal(F_, exps);

    // Power-coordinate multiplication matrices of 1, x, ..., x^{n-1}.
    SeriesMatrix X(F_, n_, n_);
    {
        Vec xv = zeros(F_, n_);
        if (n_ > 1) xv[1] = Series::one(F_);
        else xv[0] = -chi_.coeff(0);
        for (int j = 0; j < n_; ++j) {
            Vec ej = zeros(F_, n_);
            ej[j] = Series::one(F_);
            X.set_col(j, power_mul(ej, xv));
        }
    }
    auto power_mult_matrix = [&](const Vec& v) {
        SeriesMatrix M(F_, n_, n_);
        SeriesMatrix P = SeriesMatrix::identity(F_, n_);
        for (int k = 0; k < n_; ++k) {
            if (!v[k].is_exact_zero()) M = M + v[k] * P;
            if (k + 1 < n_) P = X * P;
        }
        return M;
    };

    for (int iter = 0;; ++iter) {
        if (iter >= kRound2Cap) fail(ErrorKind::FactorizationIncomplete, "maximal order did not stabilize (modulus not squarefree?)");
        build_table();
        rad_ = res_.radical();
        if (rad_.empty()) break;  // O/TO is reduced, so O is maximal
        std::vector<Vec> gens;
        const SeriesMatrix& B = order_.basis();
        for (const auto& k : rad_) gens.push_back(to_power(lift(k)));
        for (int j = 0; j < n_; ++j) {
            Vec c = B.col(j);
            for (auto& e : c) e = e.shifted(1);
            gens.push_back(std::move(c));
        }
        Lattice I = Lattice::span(F_, n_, gens, order_.conductor() + 1);
        SeriesMatrix Phi(F_, n_ * n_, n_);
        for (int j = 0; j < n_; ++j) Phi.set_block(j * n_, 0, power_mult_matrix(I.basis().col(j)));
        Lattice next = preimage(Phi, order_.scaled(-1), direct_sum(std::vector<Lattice>(n_, I)));
        if (next == order_) break;
        order_ = std::move(next);
    }
}

void EtaleAlgebra::split() {
    Quotient Q(res_, rad_);
    FqAlgebra S = Q.algebra();
    std::vector<FqVec> idem = primitive_idempotents(S);
    for (const auto& es : idem) {
        // Lift through the nilpotent radical, then T-adically.
        FqVec er = Q.embed(es);
        for (int it = 0; it < 64; ++it) {
            FqVec e2 = res_.mul(er, er);
            FqVec e3 = res_.mul(e2, er);
            FqVec nx = res_.add(res_.scale(res_.F->from_int(3), e2), res_.scale(res_.F->from_int(-2), e3));
            if (nx == er) break;
            er = nx;
        }
        Vec e = lift(er);
        for (auto& c : e) c = c.capped(prec_);
        for (int it = 0;; ++it) {
            if (it > 64) fail(ErrorKind::NonConvergence, "idempotent lifting did not converge");
            Vec e2 = mul(e, e, prec_);
            Vec e3 = mul(e2, e, prec_);
            Vec nx(n_);
            bool same = true;
            for (int k = 0; k < n_; ++k) {
                nx[k] = (Series::from_int(F_, 3) * e2[k] - Series::from_int(F_, 2) * e3[k]).capped(prec_);
                if (!(nx[k] - e[k]).is_zero()) same = false;
            }
            e = std::move(nx);
            if (same) break;
        }
        Component c;
        c.idempotent = e;
        c.degree = mult_rank(res_, er);
        c.f = mult_rank(S, es);
        c.e = c.degree / c.f;

        // The factor: characteristic polynomial of x e on e A.
        SeriesPoly chi = berkowitz(mult_matrix(mul(gen_, e, prec_)));
        std::vector<Series> g;
        for (int k = n_ - c.degree; k <= n_; ++k) g.push_back(chi.coeff(k));
        for (int k = 0; k < n_ - c.degree; ++k)
            if (chi.coeff(k).certified_nonzero()) fail(ErrorKind::InsufficientPrecision, "component factor not separated at this precision");
        g.back() = Series::one(F_);
        c.factor = SeriesPoly(F_, std::move(g));
        comps_.push_back(std::move(c));
    }
    std::sort(comps_.begin(), comps_.end(), [](const Component& a, const Component& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.e != b.e) return a.e < b.e;
        return to_list_string(a.factor) < to_list_string(b.factor);
    });
}

std::vector<bool> EtaleAlgebra::vanishing_components(const SeriesPoly& h) const {
    // h(x) in power coordinates.
    Vec hv = zeros(F_, n_);
    Vec xp = zeros(F_, n_);
    if (n_ > 1) xp[1] = Series::one(F_);
    else xp[0] = -chi_.coeff(0);
    Vec pw = zeros(F_, n_);
    pw[0] = Series::one(F_);
    for (int k = 0; k <= h.degree(); ++k) {
        for (int i = 0; i < n_; ++i)
            if (!h.coeff(k).is_exact_zero()) hv[i] += h.coeff(k) * pw[i];
        pw = power_mul(pw, xp);
    }
    const Vec ho = to_order(hv);
    std::vector<bool> out;
    int nonzero_deg = 0;
    for (const auto& c : comps_) {
        const Vec v = mul(ho, c.idempotent, prec_);
        const bool nz = std::any_of(v.begin(), v.end(), [](const Series& s) { return s.certified_nonzero(); });
        out.push_back(!nz);
        if (nz) nonzero_deg += c.degree;
    }
    if (nonzero_deg != n_ - std::max(0, h.degree()))
        fail(ErrorKind::InsufficientPrecision, "cannot certify which components a divisor vanishes on");
    return out;
}

Vec solve_in_summand(const std::vector<Vec>& cols, const Vec& v, int prec) {
    const int k = static_cast<int>(cols.size());
    require(k > 0, "empty system");
    const int m = static_cast<int>(v.size());
    // Augmented m x (k+1) system, eliminated with unit pivots.
    std::vector<Vec> a(m, Vec(k + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j) a[i][j] = cols[j][i].capped(prec);
        a[i][k] = v[i].capped(prec);
    }
    std::vector<int> prow(k);
    std::vector<bool> used(m, false);
    for (int j = 0; j < k; ++j) {
        int sel = -1;
        for (int i = 0; i < m; ++i)
            if (!used[i] && a[i][j].certified_nonzero() && a[i][j].valuation() == 0) {
                sel = i;
                break;
            }
        if (sel < 0) fail(ErrorKind::InsufficientPrecision, "basis not independent modulo T at this precision");
        used[sel] = true;
        prow[j] = sel;
        const Series inv = a[sel][j].inverse(prec);
        for (int i = 0; i < m; ++i) {
            if (i == sel || a[i][j].is_exact_zero()) continue;
            const Series f = a[i][j] * inv;
            for (int c = j; c <= k; ++c)
                if (!a[sel][c].is_exact_zero()) a[i][c] -= f * a[sel][c];
        }
    }
    Vec out(k);
    for (int j = 0; j < k; ++j) {
        const int i = prow[j];
        out[j] = a[i][k] / a[i][j];
    }
    return out;
}

}  // namespace lf
