#include "lf/orders.hpp"

#include <algorithm>

#include "lf/matrix_alg.hpp"
#include "lf/ratfunc.hpp"

namespace lf {

namespace {

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Precision used when exact rational data has to become series.
constexpr int kRatExpansion = 64;

bool is_scalar(const SeriesMatrix& X) {
    const int n = X.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                if (!(X(i, i) == X(0, 0))) return false;
            } else if (!X(i, j).is_exact_zero()) {
                return false;
            }
        }
    return is_exact(X);
}

}  // namespace

HereditaryOrder::HereditaryOrder(const FiniteField* F, int period, std::vector<int> levels)
    : F_(F), e_(period), levels_(std::move(levels)) {
    require(period >= 1, "period must be positive");
    for (int l : levels_) require(l >= 0 && l < period, "basis level out of range");
}

HereditaryOrder HereditaryOrder::standard(const FiniteField* F, int period, int N) {
    if (period < 1 || N % period != 0) fail(ErrorKind::Precondition, "the period must divide N");
    std::vector<int> lev(N);
    const int block = N / period;
    for (int i = 0; i < N; ++i) lev[i] = period - 1 - i / block;
    return HereditaryOrder(F, period, std::move(lev));
}

int HereditaryOrder::exponent(int i, int j, int k) const { return ceil_div(k + levels_[j] - levels_[i], e_); }

std::vector<int> HereditaryOrder::radical_exponents(int k) const {
    const int n = dim();
    std::vector<int> ex(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ex[i * n + j] = exponent(i, j, k);
    return ex;
}

Lattice HereditaryOrder::radical_power(int k) const { return Lattice::diagonal(F_, radical_exponents(k)); }

bool HereditaryOrder::contains(const SeriesMatrix& X, int k) const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Series& x = X(i, j);
            if (x.is_exact_zero()) continue;
            const int need = exponent(i, j, k);
            if (x.certified_nonzero()) {
                if (x.valuation() < need) return false;
            } else if (x.precision() < need) {
                fail(ErrorKind::InsufficientPrecision, "order membership undetermined");
            }
        }
    return true;
}

int HereditaryOrder::valuation(const SeriesMatrix& X) const {
    const int n = dim();
    int v = kExact;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Series& x = X(i, j);
            if (x.is_exact_zero()) continue;
            if (!x.certified_nonzero()) {
                // Zero to its precision: only a lower bound is known.
                v = std::min(v, e_ * x.precision() + levels_[i] - levels_[j]);
                continue;
            }
            v = std::min(v, e_ * x.valuation() + levels_[i] - levels_[j]);
        }
    return v;
}

Vec flatten(const SeriesMatrix& X) { return X.data(); }

SeriesMatrix unflatten(const FiniteField* F, int N, const Vec& v) {
    SeriesMatrix X(F, N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) X(i, j) = v[i * N + j];
    return X;
}

SeriesMatrix ad_matrix(const SeriesMatrix& a) {
    const int n = a.rows();
    SeriesMatrix M(a.ctx(), n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                if (!a(i, l).is_exact_zero()) M(i * n + j, l * n + j) += a(i, l);
                if (!a(l, j).is_exact_zero()) M(i * n + j, i * n + l) -= a(l, j);
            }
    return M;
}

SeriesMatrix sandwich_matrix(const SeriesMatrix& a, const SeriesMatrix& b) {
    const int n = a.rows();
    SeriesMatrix M(a.ctx(), n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (a(i, l).is_exact_zero()) continue;
            for (int m = 0; m < n; ++m)
                for (int j = 0; j < n; ++j)
                    if (!b(m, j).is_exact_zero()) M(i * n + j, l * n + m) = a(i, l) * b(m, j);
        }
    return M;
}

std::vector<Vec> ExtensionOrder::integer_ring_gens() const {
    std::vector<Vec> gens;
    const int n = E.n();
    for (int k = 0; k < n; ++k) {
        Vec c(n, Series::zero(E.base()));
        c[k] = Series::one(E.base());
        gens.push_back(flatten(E.regular_rep(E.from_coords(c))));
    }
    return gens;
}

ExtensionOrder order_of_extension(const LocalFieldExt& E) {
    std::vector<int> lev(E.n());
    for (int j = 0; j < E.n(); ++j) lev[j] = E.level(j);
    return {E, HereditaryOrder(E.base(), E.e(), std::move(lev))};
}

int lattice_index_exponent(const Lattice& big, const Lattice& small) { return index_exponent(big, small); }

Lattice intertwining_lattice(const SeriesMatrix& beta, const HereditaryOrder& A, int k) {
    require(beta.rows() == A.dim(), "element and order of different sizes");
    return preimage(ad_matrix(beta), A.order(), A.radical_power(k));
}

K0Result k0(const SeriesMatrix& beta, const HereditaryOrder& A, const std::vector<Vec>& b_gens, int cap) {
    K0Result res;
    if (is_scalar(beta)) return res;
    const int v = A.valuation(beta);
    res.scanned_from = v;
    const Lattice P = A.radical_power(1);
    std::vector<Vec> gens = b_gens;
    for (int j = 0; j < P.dim(); ++j) gens.push_back(P.basis().col(j));
    const Lattice BP = Lattice::span(A.field(), P.dim(), gens, P.conductor());
    const SeriesMatrix ad = ad_matrix(beta);
    const Lattice order = A.order();
    for (int k = v + 1; k <= v + cap; ++k) {
        const Lattice Nk = preimage(ad, order, A.radical_power(k));
        if (BP.contains(Nk)) {
            res.k0 = k - 1;
            return res;
        }
    }
    fail(ErrorKind::CapExceeded, "k0 scan exceeded its cap");
}

std::vector<Vec> centralizer_order_gens(const SeriesMatrix& beta, const HereditaryOrder& A) {
    if (!is_exact(beta)) fail(ErrorKind::Precondition, "centralizer computation needs an exact element");
    const FiniteField* F = A.field();
    const int n = beta.rows();
    auto ker = rat_kernel(to_ratmatrix(ad_matrix(beta)));
    const int d = static_cast<int>(ker.size());
    // Reduced echelon form of the kernel basis: identity on pivot coordinates.
    const std::vector<int> piv = rat_rref(ker, n * n);
    const auto& rows = ker;
    SeriesMatrix C(F, n * n, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n * n; ++j)
            if (!rows[i][j].is_zero()) C(j, i) = rows[i][j].to_series(kRatExpansion);
    const std::vector<int> ex = A.radical_exponents(0);
    std::vector<int> dom_ex(d);
    for (int i = 0; i < d; ++i) dom_ex[i] = ex[piv[i]];
    const Lattice L = preimage(C, Lattice::diagonal(F, dom_ex), A.order());
    std::vector<Vec> gens;
    for (int j = 0; j < d; ++j) gens.push_back(C.apply(L.basis().col(j)));
    return gens;
}

K0Result k0(const SeriesMatrix& beta, const HereditaryOrder& A, int cap) {
    if (is_scalar(beta)) return {};
    return k0(beta, A, centralizer_order_gens(beta, A), cap);
}

}  // namespace lf
