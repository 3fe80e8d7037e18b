#include "lf/factor.hpp"

#include <algorithm>

#include "lf/etale.hpp"
#include "lf/ratfunc.hpp"

namespace lf {

namespace {

void split_squarefree(const SeriesPoly& g, int mult, const std::vector<bool>& insep, int prec, std::vector<LocalFactor>& out) {
    if (g.degree() == 1) {
        out.push_back({g, mult, 1, 1, true});
        return;
    }
    EtaleAlgebra A(g, prec);
    const auto& comps = A.components();
    for (std::size_t i = 0; i < comps.size(); ++i)
        out.push_back({comps[i].factor, mult, comps[i].e, comps[i].f, insep.empty() || !insep[i]});
}

}  // namespace

std::vector<LocalFactor> factor_local(const SeriesPoly& f, int prec) {
    if (!is_monic(f)) fail(ErrorKind::Precondition, "factor_local needs a monic polynomial");
    std::vector<LocalFactor> out;
    if (f.degree() < 1) return out;
    if (is_exact(f)) {
        for (const auto& [g, m] : squarefree_decomposition(to_ratpoly(f))) {
            const SeriesPoly gs = to_seriespoly(g, prec);
            std::vector<bool> insep;
            if (g.degree() > 1) {
                // Inseparable components are those where gcd(g, g') vanishes.
                const RatPoly h = poly_gcd(g, g.derivative());
                if (h.degree() > 0) {
                    EtaleAlgebra A(gs, prec);
                    insep = A.vanishing_components(to_seriespoly(h, prec));
                }
            }
            split_squarefree(gs, m, insep, prec, out);
        }
    } else {
        // Inexact input must be certifiably separable.
        const SeriesPoly d = f.derivative();
        if (d.is_zero() || d.maybe_zero())
            fail(ErrorKind::InsufficientPrecision, "separability of an inexact polynomial is undecidable");
        split_squarefree(f, 1, {}, prec, out);
    }
    std::sort(out.begin(), out.end(), [](const LocalFactor& a, const LocalFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        if (a.e != b.e) return a.e < b.e;
        return to_string(a.factor) < to_string(b.factor);
    });
    return out;
}

SeriesPoly expand_factors(const std::vector<LocalFactor>& parts) {
    require(!parts.empty(), "empty factorization");
    const FiniteField* F = parts.front().factor.ctx();
    SeriesPoly p = SeriesPoly::constant(F, Series::one(F));
    for (const auto& part : parts)
        for (int i = 0; i < part.multiplicity; ++i) p *= part.factor;
    return p;
}

}  // namespace lf
