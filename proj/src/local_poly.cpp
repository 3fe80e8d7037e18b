#include "lf/local_poly.hpp"

namespace lf {

std::vector<NewtonSegment> newton_polygon(const SeriesPoly& f) {
    struct Pt {
        int x;
        long y;
        bool certain;
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= f.degree(); ++i) {
        const Series& a = f.coeffs()[i];
        if (a.is_exact_zero()) continue;
        pts.push_back({i, a.val_bound(), a.certified_nonzero()});
    }
    require(!pts.empty(), "Newton polygon of the zero polynomial");
    // Monotone chain over points, certain or not, then verify vertices.
    std::vector<Pt> hull;
    for (const Pt& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull.back();
            // remove b if it lies on or above segment a-p
            if ((b.y - a.y) * (p.x - a.x) >= (p.y - a.y) * static_cast<long>(b.x - a.x))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    // An uncertain point that is a vertex, or lies on the hull, makes the
    // polygon undetermined (its true height could be larger).
    for (const Pt& p : pts) {
        if (p.certain) continue;
        for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
            const Pt& a = hull[k];
            const Pt& b = hull[k + 1];
            if (p.x < a.x || p.x > b.x) continue;
            if ((p.y - a.y) * (b.x - a.x) <= (b.y - a.y) * static_cast<long>(p.x - a.x))
                fail(ErrorKind::InsufficientPrecision, "Newton polygon vertex at undetermined valuation");
        }
        if (hull.size() == 1 && hull[0].x == p.x)
            fail(ErrorKind::InsufficientPrecision, "Newton polygon vertex at undetermined valuation");
    }
    std::vector<NewtonSegment> segs;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const int len = hull[k + 1].x - hull[k].x;
        segs.push_back({Rational(hull[k + 1].y - hull[k].y, len), len, hull[k].x});
    }
    return segs;
}

bool is_eisenstein(const SeriesPoly& f) {
    if (!is_monic(f) || f.degree() < 1) return false;
    for (int i = 0; i < f.degree(); ++i) {
        const Series& a = f.coeffs()[i];
        if (a.is_exact_zero()) {
            if (i == 0) return false;
            continue;
        }
        if (i == 0) {
            if (!a.certified_nonzero()) {
                if (a.precision() <= 1) fail(ErrorKind::InsufficientPrecision, "constant term valuation undetermined");
                return false;
            }
            if (a.valuation() != 1) return false;
        } else if (a.val_bound() < 1) {
            if (!a.certified_nonzero()) fail(ErrorKind::InsufficientPrecision, "coefficient valuation undetermined");
            return false;
        }
    }
    return true;
}

SeriesPoly poly_mod(const SeriesPoly& a, const SeriesPoly& f) { return a % f; }

SeriesMatrix multiplication_matrix(const SeriesPoly& g, const SeriesPoly& f) {
    const int n = f.degree();
    SeriesMatrix m(f.ctx(), n, n);
    SeriesPoly cur = g % f;
    const SeriesPoly x = SeriesPoly::x(f.ctx());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) m(i, j) = cur.coeff(i);
        if (j + 1 < n) cur = (cur * x) % f;
    }
    return m;
}

int discriminant_valuation(const SeriesPoly& f) {
    require(is_monic(f), "discriminant of a non-monic polynomial");
    SeriesPoly d = f.derivative();
    if (d.is_zero()) return kExact;
    if (d.maybe_zero()) fail(ErrorKind::InsufficientPrecision, "derivative indistinguishable from zero");
    Series r = determinant(multiplication_matrix(d, f));
    if (r.is_exact_zero()) return kExact;
    if (!r.certified_nonzero()) fail(ErrorKind::InsufficientPrecision, "discriminant indistinguishable from zero");
    return r.valuation();
}

int krasner_radius(const SeriesPoly& f) {
    const int n = f.degree();
    require(n >= 1, "Krasner radius of a constant");
    if (n == 1) return 1;
    if (f.derivative().is_zero()) fail(ErrorKind::Inseparable, "derivative is zero");
    const int dv = discriminant_valuation(f);
    if (dv >= kExact) fail(ErrorKind::Inseparable, "polynomial is not squarefree");
    const int fl = dv >= 0 ? (2 * dv) / n : -((-2 * dv + n - 1) / n);
    return fl + 1;
}

}  // namespace lf
