#include "lf/matrix_alg.hpp"

#include <algorithm>

#include "lf/smith.hpp"

namespace lf {

namespace {

}  // namespace

// Gauss-Jordan in place over F_q(T); returns pivot columns.
std::vector<int> rat_rref(std::vector<std::vector<RatFunc>>& rows, int ncols) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!rows[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        const RatFunc inv = ScalarTraits<RatFunc>::one(rows[r][c].field()) / rows[r][c];
        for (auto& x : rows[r])
            if (!x.is_zero()) x = x * inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const RatFunc f = rows[i][c];
            for (int k = 0; k < ncols; ++k)
                if (!rows[r][k].is_zero()) rows[i][k] = rows[i][k] - f * rows[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    return piv;
}

namespace {

std::vector<std::vector<RatFunc>> to_rows(const Matrix<RatFunc>& m) {
    std::vector<std::vector<RatFunc>> rows(m.rows(), std::vector<RatFunc>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

bool has_zero_derivative(const SeriesPoly& f) {
    const SeriesPoly d = f.derivative();
    return std::all_of(d.coeffs().begin(), d.coeffs().end(), [](const Series& s) { return s.is_exact_zero(); });
}

}  // namespace

std::vector<std::vector<RatFunc>> rat_kernel(const Matrix<RatFunc>& m) {
    auto rows = to_rows(m);
    const int n = m.cols();
    const auto piv = rat_rref(rows, n);
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<RatFunc>> out;
    const FiniteField* F = m.ctx();
    for (int fr = 0; fr < n; ++fr) {
        if (is_piv[fr]) continue;
        std::vector<RatFunc> v(n, RatFunc(F));
        v[fr] = ScalarTraits<RatFunc>::one(F);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][fr];
        out.push_back(std::move(v));
    }
    return out;
}

int rat_rank(const Matrix<RatFunc>& m) {
    auto rows = to_rows(m);
    return static_cast<int>(rat_rref(rows, m.cols()).size());
}

CharData char_min_invariant(const SeriesMatrix& g) {
    require(g.rows() == g.cols(), "square matrix expected");
    CharData out;
    out.charpoly = berkowitz(g);
    if (is_exact(g)) {
        // Invariant factors of an exact matrix are Laurent polynomials
        // (monic divisors of chi over the integrally closed F_q[T, 1/T]).
        for (const auto& p : invariant_factors(to_ratmatrix(g))) out.key.factors.push_back(to_seriespoly(p, kExact));
        out.key.exact = true;
    } else {
        out.key.factors = invariant_factors(g);
    }
    return out;
}

bool are_conjugate(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows()) return false;
    const ConjugacyKey ka = char_min_invariant(a).key, kb = char_min_invariant(b).key;
    if (ka.factors.size() != kb.factors.size()) return false;
    for (std::size_t i = 0; i < ka.factors.size(); ++i) {
        const auto& p = ka.factors[i];
        const auto& r = kb.factors[i];
        if (p.degree() != r.degree()) return false;
        for (int j = 0; j <= p.degree(); ++j) {
            if (ka.exact && kb.exact) {
                if (!(p.coeff(j) == r.coeff(j))) return false;
                continue;
            }
            const Series d = p.coeff(j) - r.coeff(j);
            if (d.certified_nonzero()) return false;
            if (!d.is_exact_zero() && d.precision() <= 0)
                fail(ErrorKind::InsufficientPrecision, "invariant factors too imprecise to compare");
        }
    }
    return true;
}

bool operator==(const Classification& a, const Classification& b) {
    if (a.closed != b.closed || a.pure != b.pure || a.quasi_regular != b.quasi_regular ||
        a.quasi_regular_elliptic != b.quasi_regular_elliptic || a.separable != b.separable || a.regular != b.regular)
        return false;
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const auto& x = a.factors[i];
        const auto& y = b.factors[i];
        if (x.multiplicity != y.multiplicity || x.e != y.e || x.f != y.f || x.separable != y.separable ||
            x.factor.degree() != y.factor.degree())
            return false;
        for (int j = 0; j <= x.factor.degree(); ++j)
            if (!x.factor.coeff(j).agrees_with(y.factor.coeff(j))) return false;
    }
    return true;
}

Classification classify(const SeriesMatrix& g, int prec) {
    const CharData cd = char_min_invariant(g);
    const SeriesPoly& minpoly = cd.key.factors.front();
    Classification c;
    c.factors = factor_local(cd.charpoly, prec);
    // Multiplicities in the minimal polynomial decide closedness.
    const auto min_parts = factor_local(minpoly, prec);
    c.closed = std::all_of(min_parts.begin(), min_parts.end(), [](const LocalFactor& f) { return f.multiplicity == 1; });
    c.pure = min_parts.size() == 1 && min_parts.front().multiplicity == 1;
    c.quasi_regular = c.closed && minpoly.degree() == g.rows();
    c.quasi_regular_elliptic = c.quasi_regular && c.pure;
    c.separable = std::all_of(c.factors.begin(), c.factors.end(), [](const LocalFactor& f) {
        return f.separable && !(f.factor.degree() > 1 && has_zero_derivative(f.factor));
    });
    c.regular = c.quasi_regular && c.separable;
    return c;
}

bool filtration_member_poly(const SeriesPoly& chi, int k) {
    const int n = chi.degree();
    for (int j = 0; j < n; ++j) {
        const Series a = chi.coeff(j);
        if (a.is_exact_zero()) continue;
        const long need = static_cast<long>(n - j) * k + 1;
        if (a.certified_nonzero()) {
            if (a.valuation() < need) return false;
        } else if (a.precision() < need) {
            fail(ErrorKind::InsufficientPrecision, "characteristic coefficient undetermined for the filtration test");
        }
    }
    return true;
}

bool filtration_member(const SeriesMatrix& g, int k) { return filtration_member_poly(berkowitz(g), k); }

CoefficientImage coefficient_map(const SeriesMatrix& g) {
    const SeriesPoly chi = berkowitz(g);
    const int n = chi.degree();
    CoefficientImage out;
    for (int j = n - 1; j >= 0; --j) {
        const Series a = chi.coeff(j);
        out.coeffs.push_back(a);
        if (!a.certified_nonzero()) continue;
        const int v = a.valuation();
        const int w = n - j;
        const int b = v >= 0 ? v / w : -((-v + w - 1) / w);
        out.bound = out.bound ? std::min(*out.bound, b) : b;
    }
    return out;
}

}  // namespace lf
