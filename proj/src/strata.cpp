#include "lf/strata.hpp"

#include <algorithm>
#include <numeric>

#include "lf/invariants.hpp"
#include "lf/local_poly.hpp"
#include "lf/matrix_alg.hpp"

namespace lf {

namespace {

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

constexpr int kK0Cap = 96;
constexpr int kMaxApproxSteps = 256;

bool all_zero_to_precision(const SeriesMatrix& M) {
    for (const auto& s : M.data())
        if (s.certified_nonzero()) return false;
    return true;
}

SeriesMatrix elementary(const FiniteField* F, int n, int i, int j, const Series& c) {
    SeriesMatrix M(F, n, n);
    M(i, j) = c;
    return M;
}

// Certified minimum of nu_E over the nonzero coordinates, and the smallest
// bound among coordinates that are zero only to precision.
std::pair<int, int> valuation_parts(const FieldModel& E, const Vec& z) {
    const auto& lev = E.order().levels();
    int best = kExact, bound = kExact;
    for (int k = 0; k < E.degree(); ++k) {
        const Series& s = z[k];
        if (s.is_exact_zero()) continue;
        if (s.certified_nonzero())
            best = std::min(best, E.e() * s.valuation() + lev[k]);
        else
            bound = std::min(bound, E.e() * s.precision() + lev[k]);
    }
    return {best, bound};
}

Vec column(const SeriesMatrix& M, int j) { return M.col(j); }

Vec add(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

Vec sub(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

Vec pi_power(const FieldModel& E, int m, int prec) {
    Vec base = m >= 0 ? E.uniformizer() : E.inverse(E.uniformizer(), prec);
    Vec out = E.one();
    for (int i = 0; i < std::abs(m); ++i) out = E.mul(out, base);
    return out;
}

EMatrix zero_ematrix(const FieldModel& E, int d) {
    return EMatrix(d, std::vector<Vec>(d, Vec(E.degree(), Series::zero(E.base()))));
}

EMatrix ematrix_mul(const FieldModel& E, const EMatrix& a, const EMatrix& b) {
    const int d = static_cast<int>(a.size());
    EMatrix out = zero_ematrix(E, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l) out[i][j] = add(out[i][j], E.mul(a[i][l], b[l][j]));
    return out;
}

Fq fq_root(const FiniteField* K, const SeriesPoly& phi, const FieldEmbedding& emb) {
    for (int a = 0; a < K->q(); ++a) {
        Fq acc = 0;
        for (int i = phi.degree(); i >= 0; --i) acc = K->add(K->mul(acc, static_cast<Fq>(a)), emb(phi.coeff(i).coeff(0)));
        if (acc == 0) return static_cast<Fq>(a);
    }
    fail(ErrorKind::Precondition, "reduction of the polynomial has no root in the residue field");
}

}  // namespace

// ---------------------------------------------------------------------------

FieldModel FieldModel::trivial(const FiniteField* F) {
    FieldModel m;
    m.F_ = F;
    m.n_ = m.e_ = 1;
    m.order_ = HereditaryOrder(F, 1, {0});
    m.basis_rep_ = {SeriesMatrix::identity(F, 1)};
    m.pi_ = {Series::monomial(F, 1, 1)};
    return m;
}

FieldModel FieldModel::from_polynomial(const SeriesPoly& phi) {
    const FiniteField* F = phi.ctx();
    const int n = phi.degree();
    require(n >= 1, "field polynomial of degree zero");
    for (int i = 0; i <= n; ++i)
        if (!phi.coeff(i).is_exact()) fail(ErrorKind::Precondition, "field polynomial must be exact");
    FieldModel m;
    m.F_ = F;
    m.n_ = n;
    m.phi_ = phi;
    std::vector<int> lev(n, 0);
    if (is_eisenstein(phi)) {
        m.e_ = n;
        for (int k = 0; k < n; ++k) lev[k] = k;
    } else {
        for (int i = 0; i < n; ++i)
            if (!phi.coeff(i).is_exact_zero() && phi.coeff(i).valuation() < 0)
                fail(ErrorKind::Precondition, "power basis is not integral");
        if (phi.coeff(0).is_exact_zero() || phi.coeff(0).valuation() != 0 || build_extension(phi, 32).f() != n)
            fail(ErrorKind::Precondition, "power basis is not adapted: need Eisenstein or unramified");
        m.e_ = 1;
    }
    m.order_ = HereditaryOrder(F, m.e_, lev);
    const SeriesMatrix C = companion(phi);
    SeriesMatrix P = SeriesMatrix::identity(F, n);
    for (int k = 0; k < n; ++k) {
        m.basis_rep_.push_back(P);
        P = P * C;
    }
    if (m.e_ > 1) {
        m.pi_ = m.basis_vector(1);
    } else if (n == 1) {
        m.pi_ = {-phi.coeff(0)};
    } else {
        m.pi_ = m.one();
        m.pi_[0] = Series::monomial(F, 1, 1);
    }
    return m;
}

FieldModel FieldModel::from_extension(const LocalFieldExt& E) {
    FieldModel m;
    m.F_ = E.base();
    m.n_ = E.n();
    m.e_ = E.e();
    m.order_ = order_of_extension(E).order;
    for (int k = 0; k < m.n_; ++k) m.basis_rep_.push_back(E.regular_rep(E.from_coords(m.basis_vector(k))));
    m.pi_ = E.coords(E.uniformizer());
    return m;
}

Vec FieldModel::one() const { return basis_vector(0); }

Vec FieldModel::basis_vector(int k) const {
    Vec v(n_, Series::zero(F_));
    v[k] = Series::one(F_);
    return v;
}

SeriesMatrix FieldModel::rep(const Vec& z) const {
    SeriesMatrix M(F_, n_, n_);
    for (int k = 0; k < n_; ++k) {
        if (z[k].is_exact_zero()) continue;
        const SeriesMatrix& R = basis_rep_[k];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!R(i, j).is_exact_zero()) M(i, j) += z[k] * R(i, j);
    }
    return M;
}

Vec FieldModel::mul(const Vec& a, const Vec& b) const { return rep(a).apply(b); }

Vec FieldModel::inverse(const Vec& a, int prec) const { return solve(rep(a), one(), prec); }

int FieldModel::valuation(const Vec& z) const {
    const auto [best, bound] = valuation_parts(*this, z);
    if (best == kExact && bound == kExact) return kExact;
    if (best < bound) return best;
    fail(ErrorKind::InsufficientPrecision, "valuation in E undetermined at this precision");
}

// ---------------------------------------------------------------------------

ResidueBaseChange::ResidueBaseChange(const FieldModel& E) : E_(E) {
    const auto& phi = E.polynomial();
    if (!phi) fail(ErrorKind::Unsupported, "base change needs a polynomial model");
    const FiniteField* F = E.base();
    const int n = E.degree();
    if (E.e() > 1) {
        // x^e - cT
        for (int i = 1; i < n; ++i)
            if (!phi->coeff(i).is_exact_zero()) fail(ErrorKind::Unsupported, "base change needs x^e - cT");
        const Series& a0 = phi->coeff(0);
        if (a0.degree() != 1 || a0.valuation() != 1) fail(ErrorKind::Unsupported, "base change needs x^e - cT");
        ramified_ = true;
        c_ = F->neg(a0.coeff(1));
        c_inv_ = F->inv(c_);
        field_ = F->shared_from_this();
        return;
    }
    for (int i = 0; i <= n; ++i)
        if (phi->coeff(i).degree() > 0) fail(ErrorKind::Unsupported, "base change needs constant coefficients");
    field_ = FiniteField::make(F->p(), F->r() * n);
    emb_ = FieldEmbedding(F->shared_from_this(), field_);
    const FiniteField* K = field_.get();
    const Fq theta = fq_root(K, *phi, emb_);
    theta_pow_.assign(n, 1);
    for (int k = 1; k < n; ++k) theta_pow_[k] = K->mul(theta_pow_[k - 1], theta);
    theta_coords_.assign(K->q(), FqVec(n, 0));
    long total = 1;
    for (int k = 0; k < n; ++k) total *= F->q();
    for (long idx = 0; idx < total; ++idx) {
        FqVec digits(n);
        long t = idx;
        Fq v = 0;
        for (int k = 0; k < n; ++k) {
            digits[k] = static_cast<Fq>(t % F->q());
            t /= F->q();
            v = K->add(v, K->mul(emb_(digits[k]), theta_pow_[k]));
        }
        theta_coords_[v] = digits;
    }
}

Series ResidueBaseChange::to_series(const Vec& z) const {
    const FiniteField* F = E_.base();
    const FiniteField* K = field_.get();
    const int n = E_.degree();
    Series out = Series::zero(K);
    int prec = kExact;
    for (int k = 0; k < n; ++k) {
        const Series& s = z[k];
        if (!s.is_exact()) prec = std::min(prec, ramified_ ? n * s.precision() + k : s.precision());
        for (std::size_t i = 0; i < s.raw().size(); ++i) {
            const Fq a = s.raw()[i];
            if (a == 0) continue;
            const int m = s.raw_start() + static_cast<int>(i);
            if (ramified_) {
                const Fq c = m >= 0 ? F->pow(c_inv_, m) : F->pow(c_, -m);
                out += Series::monomial(K, F->mul(a, c), n * m + k);
            } else {
                out += Series::monomial(K, K->mul(emb_(a), theta_pow_[k]), m);
            }
        }
    }
    return prec < kExact ? out.with_precision(prec) : out;
}

Vec ResidueBaseChange::from_series(const Series& s) const {
    const FiniteField* F = E_.base();
    const int n = E_.degree();
    Vec z(n, Series::zero(F));
    for (std::size_t i = 0; i < s.raw().size(); ++i) {
        const Fq a = s.raw()[i];
        if (a == 0) continue;
        const int m = s.raw_start() + static_cast<int>(i);
        if (ramified_) {
            const int k = ((m % n) + n) % n, j = (m - k) / n;
            const Fq c = j >= 0 ? F->pow(c_, j) : F->pow(c_inv_, -j);
            z[k] += Series::monomial(F, F->mul(a, c), j);
        } else {
            for (int k = 0; k < n; ++k)
                if (theta_coords_[a][k] != 0) z[k] += Series::monomial(F, theta_coords_[a][k], m);
        }
    }
    if (!s.is_exact())
        for (int k = 0; k < n; ++k) z[k] = z[k].with_precision(ramified_ ? ceil_div(s.precision() - k, n) : s.precision());
    return z;
}

SeriesMatrix ResidueBaseChange::to_matrix(const EMatrix& b) const {
    const int d = static_cast<int>(b.size());
    SeriesMatrix M(field_.get(), d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M(i, j) = to_series(b[i][j]);
    return M;
}

EMatrix ResidueBaseChange::from_matrix(const SeriesMatrix& m) const {
    const int d = m.rows();
    EMatrix b(d, std::vector<Vec>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b[i][j] = from_series(m(i, j));
    return b;
}

// ---------------------------------------------------------------------------

StratumFlags stratum_flags(const Stratum& S, int prec) {
    StratumFlags out;
    const HereditaryOrder& A = S.order;
    const FiniteField* F = A.field();
    const int N = A.dim();
    require(S.gamma.rows() == N, "stratum element and order of different sizes");
    require(S.n > S.r, "a stratum needs n > r");
    out.valuation = A.valuation(S.gamma);
    const Classification cl = classify(S.gamma, prec);
    out.field = cl.pure;
    if (!cl.pure) {
        out.notes.push_back("F[gamma] is not a field");
        return out;
    }
    const CharData cd = char_min_invariant(S.gamma);
    const SeriesPoly& minpoly = cd.key.factors.front();
    if (minpoly.degree() == 1) {
        out.normalizes = true;
    } else {
        // o_E inside A and a uniformizer of E normalising A.
        const LocalFieldExt E = build_extension(minpoly, prec);
        const int m = E.n();
        const ExtElem theta = *E.origin_root();
        SeriesMatrix G(F, m, m);
        ExtElem p = E.one();
        for (int i = 0; i < m; ++i) {
            G.set_col(i, E.coords(p));
            p = p * theta;
        }
        const SeriesMatrix Ginv = inverse(G, prec);
        std::vector<SeriesMatrix> powers{SeriesMatrix::identity(F, N)};
        for (int i = 1; i < m; ++i) powers.push_back(powers.back() * S.gamma);
        auto as_matrix = [&](const Vec& coords) {
            SeriesMatrix X(F, N, N);
            const Vec c = Ginv.apply(coords);
            for (int i = 0; i < m; ++i)
                if (!c[i].is_exact_zero()) X = X + c[i] * powers[i];
            return X;
        };
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            Vec u(m, Series::zero(F));
            u[k] = Series::one(F);
            ok = A.contains(as_matrix(u), 0);
        }
        if (ok) {
            const SeriesMatrix Pi = as_matrix(E.coords(E.uniformizer()));
            const SeriesMatrix Pinv = inverse(Pi, prec);
            const Lattice order = A.order();
            const Lattice moved = image(sandwich_matrix(Pi, Pinv), order);
            ok = moved.contains(order) && order.contains(moved);
        }
        out.normalizes = ok;
        if (!ok) out.notes.push_back("F[gamma]^x does not normalise the order");
    }
    if (out.valuation != -S.n) out.notes.push_back("nu_A(gamma) differs from -n");
    out.pure = out.field && out.normalizes && out.valuation == -S.n;
    if (!out.pure) return out;
    if (minpoly.degree() > 1) out.k0 = k0(S.gamma, A, kK0Cap).k0;
    out.simple = !out.k0 || S.r < -*out.k0;
    if (!out.simple) out.notes.push_back("r >= -k0");
    return out;
}

bool strata_equivalent(const Stratum& a, const Stratum& b) {
    if (!(a.order == b.order) || a.n != b.n || a.r != b.r) return false;
    return a.order.contains(a.gamma - b.gamma, -a.r);
}

std::vector<Fq> stratum_char_poly(const Stratum& S) {
    const HereditaryOrder& A = S.order;
    const FiniteField* F = A.field();
    const int e = A.period();
    if (A.valuation(S.gamma) < -S.n) fail(ErrorKind::Precondition, "gamma is not in P^{-n}");
    const int g = std::gcd(e, S.n);
    SeriesMatrix y = SeriesMatrix::identity(F, A.dim());
    for (int i = 0; i < e / g; ++i) y = y * S.gamma;
    y = Series::monomial(F, 1, S.n / g) * y;
    const SeriesPoly chi = berkowitz(y);
    std::vector<Fq> out;
    for (int i = 0; i <= chi.degree(); ++i) {
        const Series& c = chi.coeff(i);
        if (!c.is_exact_zero() && c.val_bound() < 0) fail(ErrorKind::InsufficientPrecision, "residual polynomial is not integral");
        if (c.precision() <= 0) fail(ErrorKind::InsufficientPrecision, "residual polynomial undetermined");
        out.push_back(c.coeff(0));
    }
    return out;
}

// ---------------------------------------------------------------------------

Vec TameCorestriction::operator()(const SeriesMatrix& X) const { return map.apply(flatten(X)); }

TameCorestriction tame_corestriction(const FieldModel& E, int prec) {
    const FiniteField* F = E.base();
    const int n = E.degree();
    TameCorestriction out;
    out.E = E;
    std::vector<SeriesMatrix> R;
    for (int k = 0; k < n; ++k) R.push_back(E.rep(E.basis_vector(k)));
    // Dual basis for the form (a, b) -> first coordinate of ab.
    SeriesMatrix G(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = R[i](0, j);
    const SeriesMatrix H = inverse(G, prec);
    // s1(X) = sum_j u_j^* X(u_j) is an (E, E)-bimodule map.
    SeriesMatrix s1(F, n, n * n);
    for (int j = 0; j < n; ++j) {
        const SeriesMatrix dual = E.rep(H.col(j));
        for (int i = 0; i < n; ++i) {
            const Vec c = dual.col(i);
            for (int a = 0; a < n; ++a) s1(a, i * n + j) = c[a];
        }
    }
    // Normalise so that s(A(E)) = o_E.
    const HereditaryOrder& A = E.order();
    auto image_of = [&](const SeriesMatrix& map, int i, int j) {
        Vec v = column(map, i * n + j);
        const Series t = Series::monomial(F, 1, A.exponent(i, j, 0));
        for (auto& s : v) s = s * t;
        return v;
    };
    int lowest = kExact, uncertain = kExact;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto [best, bound] = valuation_parts(E, image_of(s1, i, j));
            lowest = std::min(lowest, best);
            uncertain = std::min(uncertain, bound);
        }
    if (lowest == kExact || lowest >= uncertain) fail(ErrorKind::NormalizationFailed, "corestriction image undetermined");
    SeriesMatrix s = E.rep(pi_power(E, -lowest, prec)) * s1;

    const SeriesMatrix I = SeriesMatrix::identity(F, n);
    const Vec s_one = s.apply(flatten(I));
    if (E.valuation(s_one) == 0) {
        out.map = E.rep(E.inverse(s_one, prec)) * s;
        out.x0 = I;
        out.x0_is_one = true;
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec v = image_of(s, i, j);
            const auto [best, bound] = valuation_parts(E, v);
            if (best != 0 || bound <= 0) continue;
            const SeriesMatrix X = elementary(F, n, i, j, Series::monomial(F, 1, A.exponent(i, j, 0)));
            out.map = s;
            out.x0 = X * E.rep(E.inverse(v, prec));
            return out;
        }
    fail(ErrorKind::NormalizationFailed, "no element of A(E) maps to a unit");
}

// ---------------------------------------------------------------------------

std::vector<int> TensorSetting::block_levels() const { return HereditaryOrder::standard(E.base(), block_period, d).levels(); }

HereditaryOrder TensorSetting::order() const {
    const int n = E.degree();
    const auto lb = block_levels();
    const auto& le = E.order().levels();
    std::vector<int> lev(dim());
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < n; ++k) lev[j * n + k] = lb[j] + block_period * le[k];
    return HereditaryOrder(E.base(), E.e() * block_period, std::move(lev));
}

SeriesMatrix TensorSetting::embed(const Vec& beta) const {
    const SeriesMatrix r = E.rep(beta);
    SeriesMatrix M(E.base(), dim(), dim());
    for (int j = 0; j < d; ++j) M.set_block(j * E.degree(), j * E.degree(), r);
    return M;
}

SeriesMatrix TensorSetting::tensor(const SeriesMatrix& a, const EMatrix& b) const {
    const int n = E.degree();
    SeriesMatrix M(E.base(), dim(), dim());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M.set_block(i * n, j * n, a * E.rep(b[i][j]));
    return M;
}

EMatrix TensorSetting::corestrict(const TameCorestriction& s, const SeriesMatrix& X) const {
    const int n = E.degree();
    EMatrix b(d, std::vector<Vec>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) b[i][j] = s(X.block(i * n, j * n, n, n));
    return b;
}

bool TensorSetting::block_contains(const EMatrix& b, int k) const {
    const HereditaryOrder B = HereditaryOrder::standard(E.base(), block_period, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto [best, bound] = valuation_parts(E, b[i][j]);
            const int need = B.exponent(i, j, k);
            if (best < need) return false;
            if (bound < need) fail(ErrorKind::InsufficientPrecision, "block membership undetermined");
        }
    return true;
}

int TensorSetting::block_valuation(const EMatrix& b) const {
    const auto lb = block_levels();
    int v = kExact;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto [best, bound] = valuation_parts(E, b[i][j]);
            const int w = std::min(best, bound);
            if (w == kExact) continue;
            v = std::min(v, block_period * w + lb[i] - lb[j]);
        }
    return v;
}

EMatrix TensorSetting::radical_generator() const {
    EMatrix P = zero_ematrix(E, d);
    const int blk = d / block_period;
    if (block_period == 1) {
        for (int i = 0; i < d; ++i) P[i][i] = E.uniformizer();
        return P;
    }
    // Block s of columns to block s-1 of rows; block 0 wraps round with pi_E.
    for (int s = 0; s < block_period; ++s)
        for (int t = 0; t < blk; ++t) {
            const int col = s * blk + t;
            if (s > 0)
                P[(s - 1) * blk + t][col] = E.one();
            else
                P[(block_period - 1) * blk + t][col] = E.uniformizer();
        }
    return P;
}

// ---------------------------------------------------------------------------

Split split_against_beta(const TensorSetting& T, const TameCorestriction& s, const Vec& beta, const SeriesMatrix& v, int k,
                         int prec) {
    const FieldModel& E = T.E;
    const FiniteField* F = E.base();
    const int n = E.degree(), d = T.d;
    const HereditaryOrder A = T.order();
    if (!A.contains(v, k)) fail(ErrorKind::Precondition, "v is not in P^k");
    // Per block: A(E) = ad(W) + x E with W the matrices with zero first column.
    const SeriesMatrix rb = E.rep(beta);
    SeriesMatrix sys(F, n * n, n * n);
    int col = 0;
    for (int a = 0; a < n; ++a)
        for (int c = 1; c < n; ++c) {
            const SeriesMatrix Eac = elementary(F, n, a, c, Series::one(F));
            sys.set_col(col++, flatten(rb * Eac - Eac * rb));
        }
    for (int kk = 0; kk < n; ++kk) sys.set_col(col++, flatten(s.x0 * E.rep(E.basis_vector(kk))));
    const SeriesMatrix inv = inverse(sys, prec);

    Split out;
    out.y = SeriesMatrix(F, T.dim(), T.dim());
    out.b = EMatrix(d, std::vector<Vec>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Vec sol = inv.apply(flatten(v.block(i * n, j * n, n, n)));
            SeriesMatrix Y(F, n, n);
            int w = 0;
            for (int a = 0; a < n; ++a)
                for (int c = 1; c < n; ++c) Y(a, c) = sol[w++];
            out.y.set_block(i * n, j * n, Y);
            out.b[i][j] = Vec(sol.begin() + w, sol.end());
        }
    const SeriesMatrix bm = T.embed(beta);
    const SeriesMatrix residual = v - (bm * out.y - out.y * bm) - T.tensor(s.x0, out.b);
    out.residual_valuation = A.valuation(residual);
    return out;
}

std::optional<int> k0_of_embedded(const TensorSetting& T, const Vec& beta) {
    const FieldModel& E = T.E;
    if (E.degree() == 1) return std::nullopt;
    // B = A meet End_E(V): blocks rho(p_E^m o_E) with the exponents of B.
    const HereditaryOrder B = HereditaryOrder::standard(E.base(), T.block_period, T.d);
    std::vector<Vec> gens;
    const int n = E.degree();
    for (int i = 0; i < T.d; ++i)
        for (int j = 0; j < T.d; ++j) {
            const Vec scale = pi_power(E, B.exponent(i, j, 0), kK0Cap);
            for (int k = 0; k < n; ++k) {
                EMatrix b = zero_ematrix(E, T.d);
                b[i][j] = E.mul(scale, E.basis_vector(k));
                gens.push_back(flatten(T.block_matrix(b)));
            }
        }
    return k0(T.embed(beta), T.order(), gens, kK0Cap).k0;
}

Approximation approximate_given_beta(const TensorSetting& T, const TameCorestriction& s, const Vec& beta, int r,
                                     const SeriesMatrix& gamma, int prec, std::optional<int> k0_beta) {
    const FieldModel& E = T.E;
    const FiniteField* F = E.base();
    const HereditaryOrder A = T.order();
    const int N = T.dim();
    if (!k0_beta) k0_beta = k0_of_embedded(T, beta);
    const SeriesMatrix bm = T.embed(beta);
    if (!A.contains(gamma - bm, -r)) fail(ErrorKind::Precondition, "gamma - beta is not in P^{-r}");
    Approximation out;
    out.gain = k0_beta ? -r - *k0_beta : kExact;
    if (out.gain <= 0) fail(ErrorKind::Precondition, "the stratum for beta is not simple");
    const SeriesMatrix I = SeriesMatrix::identity(F, N);
    out.g = I;
    out.g_inv = I;
    out.b = zero_ematrix(E, T.d);
    int last = -r - 1;
    for (;;) {
        const SeriesMatrix R = out.g * gamma * out.g_inv - bm - T.tensor(s.x0, out.b);
        const int v = A.valuation(R);
        out.residual_valuation = v;
        if (all_zero_to_precision(R)) break;
        if (v <= last) fail(ErrorKind::NonConvergence, "approximation residual did not improve");
        if (out.steps >= kMaxApproxSteps) fail(ErrorKind::NonConvergence, "approximation step budget exhausted");
        last = v;
        const Split sp = split_against_beta(T, s, beta, R, v, prec);
        const SeriesMatrix step = I + sp.y;
        out.g = step * out.g;
        out.g_inv = out.g_inv * inverse(step, prec);
        for (int i = 0; i < T.d; ++i)
            for (int j = 0; j < T.d; ++j) out.b[i][j] = add(out.b[i][j], sp.b[i][j]);
        ++out.steps;
    }
    out.b_in_order = T.block_contains(out.b, -r);
    if (!k0_beta) {
        out.g_in_group = all_zero_to_precision(out.g - I);
        return out;
    }
    EMatrix P = zero_ematrix(E, T.d);
    for (int i = 0; i < T.d; ++i) P[i][i] = E.one();
    const EMatrix gen = T.radical_generator();
    for (int i = 0; i < out.gain; ++i) P = ematrix_mul(E, P, gen);
    const Lattice Nk = intertwining_lattice(bm, A, *k0_beta);
    const Lattice QN = image(sandwich_matrix(T.block_matrix(P), I), Nk);
    out.g_in_group = QN.contains(flatten(out.g - I));
    return out;
}

// ---------------------------------------------------------------------------

SeriesMatrix truncate_exact(const SeriesMatrix& M) {
    SeriesMatrix out = M;
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) out(i, j) = M(i, j).exact_part();
    return out;
}

EMatrix truncate_exact(const EMatrix& b) {
    EMatrix out = b;
    for (auto& row : out)
        for (auto& z : row)
            for (auto& c : z) c = c.exact_part();
    return out;
}

MinApproxSequence length_one_sequence(const TensorSetting& T, const TameCorestriction& s, const Vec& beta,
                                      const EMatrix& b) {
    MinApproxSequence seq;
    seq.gammas = {T.embed(beta) + T.tensor(s.x0, b), T.embed(beta)};
    seq.levels = {{T, s, beta, s.x0, b}};
    seq.order = T.order();
    return seq;
}

namespace {

struct LevelData {
    int n = 0, e = 1, f = 1;
    std::optional<int> k;
    bool minimal = true;
};

// Invariants of a pure element given through its minimal polynomial.
LevelData level_data(const SeriesMatrix& gamma) {
    const SeriesPoly minpoly = char_min_invariant(gamma).key.factors.front();
    LevelData out;
    if (minpoly.degree() == 1) {
        const Series a = -minpoly.coeff(0);
        out.n = a.is_exact_zero() ? 0 : -a.valuation();
        return out;
    }
    const EllipticInvariants inv = elliptic_invariants(minpoly);
    out.n = inv.n_F;
    out.e = inv.e;
    out.f = inv.f;
    out.k = inv.k_F;
    out.minimal = inv.minimal;
    return out;
}

std::string level_name(int i) { return "level " + std::to_string(i) + ": "; }

void compare_claims(const MinApproxSequence& seq, int i, const LevelData& got, Report& rep) {
    auto check = [&](const std::vector<int>& claim, int value, const char* what) {
        if (static_cast<int>(claim.size()) <= i) return;
        if (claim[i] != value)
            rep.violations.push_back(level_name(i) + what + " claimed " + std::to_string(claim[i]) + ", computed " +
                                     std::to_string(value));
    };
    check(seq.n, got.n, "n");
    if (got.k) check(seq.r, -*got.k, "r");
    check(seq.e, got.e, "e");
    check(seq.f, got.f, "f");
}

bool stratum_is_simple(const Stratum& S, int prec, std::string& why) {
    try {
        const StratumFlags fl = stratum_flags(S, prec);
        if (fl.simple) return true;
        why = fl.notes.empty() ? "not simple" : fl.notes.front();
    } catch (const Error& e) {
        why = e.what();
    }
    return false;
}

}  // namespace

Report verify_min_approx_sequence(const MinApproxSequence& seq, int prec) {
    Report rep;
    auto& bad = rep.violations;
    const int m = static_cast<int>(seq.gammas.size()) - 1;
    if (m < 0) {
        bad.push_back("empty sequence");
        return rep;
    }
    if (static_cast<int>(seq.levels.size()) != m) {
        bad.push_back("expected one level of data per step");
        return rep;
    }
    if (m > 1) {
        bad.push_back("sequences longer than 1 are not supported by this verifier");
        return rep;
    }
    for (const auto& g : seq.gammas)
        if (!is_exact(g)) bad.push_back("sequence elements must be exact");
    if (!bad.empty()) return rep;

    const SeriesMatrix& g0 = seq.gammas[0];
    if (!classify(g0, prec).quasi_regular_elliptic) {
        bad.push_back(level_name(0) + "gamma is not quasi-regular elliptic");
        return rep;
    }
    const LevelData d0 = level_data(g0);
    compare_claims(seq, 0, d0, rep);
    if (m == 0) {
        if (!d0.minimal) bad.push_back(level_name(0) + "a sequence of length 0 needs a minimal element");
        return rep;
    }
    if (d0.minimal) bad.push_back(level_name(0) + "minimal element with a sequence of positive length");
    if (!d0.k) {
        bad.push_back(level_name(0) + "central element");
        return rep;
    }
    const int n0 = d0.n, r0 = -*d0.k;

    const SequenceLevel& L = seq.levels[0];
    const TensorSetting& T = L.setting;
    const HereditaryOrder A = T.order();
    if (!(A == seq.order)) bad.push_back(level_name(0) + "order differs from the decomposition's order");
    const SeriesMatrix& g1 = seq.gammas[1];
    if (!(g1 == T.embed(L.next))) bad.push_back(level_name(1) + "gamma is not the embedded element");
    const SeriesMatrix diff = g0 - g1;
    if (!all_zero_to_precision(diff - T.tensor(L.x, L.b))) bad.push_back(level_name(0) + "gamma_0 - gamma_1 differs from x (x) b");

    std::string why;
    if (!stratum_is_simple({A, n0, r0, g1}, prec, why)) bad.push_back(level_name(0) + "stratum for gamma_1 not simple: " + why);
    if (!A.contains(diff, -r0)) bad.push_back(level_name(0) + "strata for gamma_0 and gamma_1 are not equivalent");
    try {
        if (!stratum_flags({A, n0, r0, g0}, prec).pure) bad.push_back(level_name(0) + "stratum for gamma_0 is not pure");
    } catch (const Error& e) {
        bad.push_back(level_name(0) + "purity undecided: " + e.what());
    }

    // Corrector and derived element.
    const Vec sx = L.s(L.x);
    const Vec one_diff = sub(sx, T.E.one());
    if (std::any_of(one_diff.begin(), one_diff.end(), [](const Series& c) { return c.certified_nonzero(); }))
        bad.push_back(level_name(1) + "s(x) != 1");
    const EMatrix sb = T.corestrict(L.s, diff);
    for (int i = 0; i < T.d; ++i)
        for (int j = 0; j < T.d; ++j) {
            const Vec dv = sub(sb[i][j], L.b[i][j]);
            if (std::any_of(dv.begin(), dv.end(), [](const Series& c) { return c.certified_nonzero(); }))
                bad.push_back(level_name(0) + "b differs from the corestriction of gamma_0 - gamma_1");
        }
    try {
        const ResidueBaseChange bc(T.E);
        const SeriesMatrix bb = bc.to_matrix(L.b);
        if (!classify(bb, prec).quasi_regular_elliptic) bad.push_back(level_name(0) + "b is not quasi-regular elliptic over E");
        const HereditaryOrder B = HereditaryOrder::standard(bc.field(), T.block_period, T.d);
        if (!stratum_is_simple({B, r0, r0 - 1, bb}, prec, why)) bad.push_back(level_name(0) + "derived stratum not simple: " + why);
    } catch (const Error& e) {
        bad.push_back(level_name(0) + "derived element check failed: " + e.what());
    }

    const LevelData d1 = level_data(g1.block(0, 0, T.E.degree(), T.E.degree()));
    compare_claims(seq, 1, d1, rep);
    if (!d1.minimal) bad.push_back(level_name(1) + "last element is not minimal");
    return rep;
}

RefinementReport verify_refinement(const RefinementData& data, int prec) {
    RefinementReport rep;
    auto& bad = rep.violations;
    const TensorSetting& T = data.setting;
    const HereditaryOrder A = T.order();
    const SeriesMatrix beta = T.embed(data.beta);
    const SeriesMatrix gamma = beta + T.tensor(data.s.x0, data.b);
    std::string why;
    if (!stratum_is_simple({A, data.n, data.r, beta}, prec, why)) bad.push_back("stratum for beta not simple: " + why);
    const ResidueBaseChange bc(T.E);
    const SeriesMatrix bb = bc.to_matrix(data.b);
    const HereditaryOrder B = HereditaryOrder::standard(bc.field(), T.block_period, T.d);
    if (!stratum_is_simple({B, data.r, data.r - 1, bb}, prec, why)) bad.push_back("derived stratum not simple: " + why);

    // E[b] over E, then over F.
    const SeriesPoly bmin = char_min_invariant(bb).key.factors.front();
    int eb = 1, fb = 1;
    if (bmin.degree() > 1) {
        const LocalFieldExt Eb = build_extension(bmin, prec);
        eb = Eb.e();
        fb = Eb.f();
    }
    rep.predicted_e = T.E.e() * eb;
    rep.predicted_f = T.E.f() * fb;
    const SeriesPoly gmin = char_min_invariant(gamma).key.factors.front();
    const LocalFieldExt Eg = build_extension(gmin, prec);
    rep.e = Eg.e();
    rep.f = Eg.f();
    if (rep.e != rep.predicted_e) bad.push_back("e(F[gamma]) differs from e(E[b])");
    if (rep.f != rep.predicted_f) bad.push_back("f(F[gamma]) differs from f(E[b])");

    rep.k0 = k0(gamma, A, kK0Cap).k0;
    rep.predicted_k0 = bmin.degree() > 1 ? std::optional<int>(-data.r) : k0_of_embedded(T, data.beta);
    if (rep.k0 != rep.predicted_k0) bad.push_back("k0(gamma) differs from the predicted value");
    return rep;
}

}  // namespace lf
