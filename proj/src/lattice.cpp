#include "lf/lattice.hpp"

#include <algorithm>

namespace lf {

namespace {

// Hermite reduction modulo T^s of integral columns (entries known mod T^s),
// with T^s o^m added to the span.  Returns the lower-triangular basis with
// monomial pivots; sub-pivot entries are reduced and exact.
SeriesMatrix hnf_mod(const FiniteField* F, int m, std::vector<Vec> cols, int s, std::vector<int>& piv) {
    for (auto& c : cols)
        for (auto& e : c) {
            if (e.is_exact_zero()) continue;
            if (e.precision() < s) fail(ErrorKind::InsufficientPrecision, "lattice generator known below the needed precision");
            if (e.val_bound() < 0) fail(ErrorKind::Precondition, "non-integral generator in modular reduction");
            e = e.capped(s);
        }
    SeriesMatrix B(F, m, m);
    piv.assign(m, 0);
    std::vector<Vec> basis(m);
    for (int r = 0; r < m; ++r) {
        int best = -1, bv = s;
        for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
            const Series& e = cols[c][r];
            if (e.certified_nonzero() && e.valuation() < bv) {
                best = c;
                bv = e.valuation();
            }
        }
        if (best < 0) {
            Vec p(m, Series::zero(F));
            p[r] = Series::monomial(F, 1, s);
            basis[r] = std::move(p);
            piv[r] = s;
            for (auto& c : cols) c[r] = Series::zero(F);
            continue;
        }
        Vec p = std::move(cols[best]);
        cols.erase(cols.begin() + best);
        const Series unit = p[r].shifted(-bv);
        const Series uinv = unit.inverse(s - bv).exact_part();
        for (int k = r + 1; k < m; ++k)
            if (!p[k].is_exact_zero()) p[k] = (p[k] * uinv).capped(s);
        p[r] = Series::monomial(F, 1, bv);
        for (auto& c : cols) {
            Series e = c[r];
            c[r] = Series::zero(F);
            if (e.is_zero()) continue;
            const Series q = e.shifted(-bv).capped(s - bv).exact_part();
            for (int k = r + 1; k < m; ++k)
                if (!p[k].is_exact_zero()) c[k] = (c[k] - q * p[k]).capped(s);
        }
        if (bv > 0) {
            Vec extra(m, Series::zero(F));
            bool any = false;
            for (int k = r + 1; k < m; ++k) {
                if (p[k].is_exact_zero()) continue;
                extra[k] = p[k].shifted(s - bv).capped(s);
                any = any || extra[k].certified_nonzero();
            }
            if (any) cols.push_back(std::move(extra));
        }
        basis[r] = std::move(p);
        piv[r] = bv;
        // Columns that became zero carry no information.
        std::erase_if(cols, [](const Vec& c) {
            return std::all_of(c.begin(), c.end(), [](const Series& e) { return e.is_zero(); });
        });
    }
    // Canonical reduction of sub-pivot entries.
    for (int i = 0; i < m; ++i) {
        Vec& col = basis[i];
        for (int r = i + 1; r < m; ++r) {
            const Series x = col[r];
            const Series low = x.low_part(piv[r]);
            const Series high = (x.exact_part() - low).shifted(-piv[r]);
            if (!high.is_exact_zero()) {
                for (int k = r + 1; k < m; ++k)
                    if (!basis[r][k].is_exact_zero()) col[k] = (col[k] - high * basis[r][k]).capped(s);
            }
            col[r] = low;
        }
        for (int r = 0; r < m; ++r) B(r, i) = col[r];
    }
    return B;
}

int min_val(const std::vector<Vec>& cols) {
    int v = kExact;
    for (const auto& c : cols)
        for (const auto& e : c)
            if (!e.is_exact_zero()) v = std::min(v, e.val_bound());
    return v;
}

}  // namespace

Lattice Lattice::diagonal(const FiniteField* F, const std::vector<int>& exps) {
    Lattice L;
    L.F_ = F;
    L.m_ = static_cast<int>(exps.size());
    L.B_ = SeriesMatrix(F, L.m_, L.m_);
    for (int i = 0; i < L.m_; ++i) L.B_(i, i) = Series::monomial(F, 1, exps[i]);
    L.piv_ = exps;
    L.finish();
    return L;
}

Lattice Lattice::span(const FiniteField* F, int m, const std::vector<Vec>& gens, int s) {
    int lo = std::min(min_val(gens), s);
    std::vector<Vec> cols = gens;
    for (auto& c : cols)
        for (auto& e : c)
            if (!e.is_exact_zero()) e = e.shifted(-lo);
    std::vector<int> piv;
    SeriesMatrix B = hnf_mod(F, m, std::move(cols), s - lo, piv);
    Lattice L;
    L.F_ = F;
    L.m_ = m;
    L.B_ = lo == 0 ? B : B.map([lo](const Series& e) { return e.shifted(lo); });
    for (auto& v : piv) v += lo;
    L.piv_ = piv;
    L.finish();
    return L;
}

Lattice Lattice::span(const SeriesMatrix& gens, int s) {
    std::vector<Vec> cols;
    for (int j = 0; j < gens.cols(); ++j) cols.push_back(gens.col(j));
    return span(gens.ctx(), gens.rows(), cols, s);
}

void Lattice::finish() {
    // Exact inverse of the triangular basis (pivots are monomials).
    Binv_ = SeriesMatrix(F_, m_, m_);
    for (int j = 0; j < m_; ++j) {
        // Solve B x = e_j by forward substitution.
        for (int i = j; i < m_; ++i) {
            Series acc = i == j ? Series::one(F_) : Series::zero(F_);
            for (int k = j; k < i; ++k)
                if (!B_(i, k).is_exact_zero() && !Binv_(k, j).is_exact_zero()) acc = acc - B_(i, k) * Binv_(k, j);
            Binv_(i, j) = acc.shifted(-piv_[i]);
        }
    }
    int vmin = kExact;
    for (const auto& e : Binv_.data())
        if (!e.is_exact_zero()) vmin = std::min(vmin, e.valuation());
    cond_ = -vmin;
    vmin = kExact;
    for (const auto& e : B_.data())
        if (!e.is_exact_zero()) vmin = std::min(vmin, e.valuation());
    floor_ = vmin;
}

int Lattice::det_valuation() const {
    int d = 0;
    for (int v : piv_) d += v;
    return d;
}

Vec Lattice::coordinates(const Vec& v) const { return Binv_.apply(v); }

bool Lattice::contains(const Vec& v) const {
    for (const auto& x : coordinates(v)) {
        if (x.certified_nonzero()) {
            if (x.valuation() < 0) return false;
        } else if (!x.is_exact_zero() && x.precision() < 0) {
            fail(ErrorKind::InsufficientPrecision, "lattice membership undetermined at working precision");
        }
    }
    return true;
}

bool Lattice::contains(const Lattice& o) const {
    for (int j = 0; j < o.m_; ++j)
        if (!contains(o.B_.col(j))) return false;
    return true;
}

Lattice Lattice::scaled(int k) const {
    Lattice L = *this;
    L.B_ = B_.map([k](const Series& e) { return e.shifted(k); });
    for (auto& v : L.piv_) v += k;
    L.finish();
    return L;
}

Lattice operator+(const Lattice& a, const Lattice& b) {
    require(a.dim() == b.dim(), "lattice dimensions differ");
    std::vector<Vec> cols;
    for (int j = 0; j < a.dim(); ++j) cols.push_back(a.basis().col(j));
    for (int j = 0; j < b.dim(); ++j) cols.push_back(b.basis().col(j));
    return Lattice::span(a.field(), a.dim(), cols, std::min(a.conductor(), b.conductor()));
}

Lattice preimage(const SeriesMatrix& phi, const Lattice& dom, const Lattice& tgt) {
    const int a = dom.dim(), b = tgt.dim();
    require(phi.rows() == b && phi.cols() == a, "preimage: map has the wrong shape");
    const FiniteField* F = dom.field();
    SeriesMatrix C = tgt.inverse_basis() * (phi * dom.basis());
    int s = 0;
    for (const auto& e : C.data())
        if (!e.is_exact_zero()) s = std::max(s, -e.val_bound());
    std::vector<Vec> cols(a, Vec(b + a, Series::zero(F)));
    for (int j = 0; j < a; ++j) {
        for (int i = 0; i < b; ++i)
            if (!C(i, j).is_exact_zero()) cols[j][i] = C(i, j).shifted(s);
        cols[j][b + j] = Series::one(F);
    }
    std::vector<int> piv;
    SeriesMatrix H = hnf_mod(F, b + a, std::move(cols), s, piv);
    SeriesMatrix K = H.block(b, b, a, a);
    return Lattice::span(dom.basis() * K, s + dom.conductor());
}

Lattice intersect(const Lattice& a, const Lattice& b) {
    return preimage(SeriesMatrix::identity(a.field(), a.dim()), a, b);
}

Lattice image(const SeriesMatrix& phi, const Lattice& L) {
    SeriesMatrix M = phi * L.basis();
    const Series d = determinant(M);
    if (!d.certified_nonzero()) fail(ErrorKind::SingularAtPrecision, "image under a map not certified injective");
    const int s = d.valuation() - (M.rows() - 1) * min_valuation(M);
    return Lattice::span(M, s);
}

int index_exponent(const Lattice& big, const Lattice& small) {
    if (!big.contains(small)) fail(ErrorKind::NotSublattice, "index of a lattice that is not a sublattice");
    return small.det_valuation() - big.det_valuation();
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
    require(!parts.empty(), "direct sum of nothing");
    const FiniteField* F = parts[0].field();
    int m = 0;
    for (const auto& p : parts) m += p.dim();
    std::vector<Vec> cols;
    int off = 0, s = 0;
    for (const auto& p : parts) {
        for (int j = 0; j < p.dim(); ++j) {
            Vec v(m, Series::zero(F));
            for (int i = 0; i < p.dim(); ++i) v[off + i] = p.basis()(i, j);
            cols.push_back(std::move(v));
        }
        s = std::max(s, p.conductor());
        off += p.dim();
    }
    return Lattice::span(F, m, cols, s);
}

}  // namespace lf
