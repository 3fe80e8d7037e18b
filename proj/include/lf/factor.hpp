#pragma once

#include <vector>

#include "lf/poly.hpp"

namespace lf {

struct LocalFactor {
    SeriesPoly factor;  // monic irreducible over F, known to the working precision
    int multiplicity = 1;
    int e = 1, f = 1;
    bool separable = true;
};

// Factorization of a monic polynomial over F into irreducibles.  Exact input
// is first split by its squarefree decomposition; each squarefree part is then
// decomposed through the maximal order of F[x]/(g).  Factors are sorted by
// (degree, e, text).
std::vector<LocalFactor> factor_local(const SeriesPoly& f, int prec);

// Product of factor^multiplicity.
SeriesPoly expand_factors(const std::vector<LocalFactor>& parts);

}  // namespace lf
