#pragma once

#include <boost/rational.hpp>
#include <vector>

#include "lf/matrix.hpp"
#include "lf/poly.hpp"

namespace lf {

using Rational = boost::rational<long>;

struct NewtonSegment {
    Rational slope;
    int length = 0;
    int start = 0;  // abscissa of the left end
    friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

// Lower convex hull of {(i, nu(a_i))}, left to right with increasing slopes.
// Throws InsufficientPrecision when a possible vertex has undetermined height.
std::vector<NewtonSegment> newton_polygon(const SeriesPoly& f);

bool is_eisenstein(const SeriesPoly& f);

// Matrix of multiplication by g in F[x]/(f), basis 1, x, ..., x^{n-1}.
SeriesMatrix multiplication_matrix(const SeriesPoly& g, const SeriesPoly& f);
SeriesPoly poly_mod(const SeriesPoly& a, const SeriesPoly& f);
// nu(Res(f, f')); kExact when f' = 0 exactly.
int discriminant_valuation(const SeriesPoly& f);
// Any monic g congruent to f modulo p^k (coefficientwise) has the same
// splitting behaviour: k = floor(2 nu(disc f) / n) + 1.
int krasner_radius(const SeriesPoly& f);

}  // namespace lf
