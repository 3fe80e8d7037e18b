#pragma once

#include <optional>
#include <vector>

#include "lf/factor.hpp"
#include "lf/matrix.hpp"
#include "lf/ratfunc.hpp"

namespace lf {

// Invariant factors of tI - g, largest first (the first is the minimal
// polynomial).  For exact matrices they are exact Laurent polynomials.
struct ConjugacyKey {
    std::vector<SeriesPoly> factors;
    bool exact = false;
    friend bool operator==(const ConjugacyKey&, const ConjugacyKey&) = default;
};

struct CharData {
    SeriesPoly charpoly;
    ConjugacyKey key;
};

CharData char_min_invariant(const SeriesMatrix& g);
bool are_conjugate(const SeriesMatrix& a, const SeriesMatrix& b);

struct Classification {
    bool closed = false, pure = false, quasi_regular = false;
    bool quasi_regular_elliptic = false, separable = false, regular = false;
    // Irreducible factors of the characteristic polynomial, with their
    // multiplicity there.
    std::vector<LocalFactor> factors;
    friend bool operator==(const Classification& a, const Classification& b);
};

Classification classify(const SeriesMatrix& g, int prec);

// nu(a_j) >= (N - j) k + 1 for j < N, with chi = sum a_j t^j.
bool filtration_member(const SeriesMatrix& g, int k);
bool filtration_member_poly(const SeriesPoly& chi, int k);

struct CoefficientImage {
    std::vector<Series> coeffs;  // a_{N-1}, ..., a_0
    std::optional<int> bound;    // absent when every a_j vanishes
};

CoefficientImage coefficient_map(const SeriesMatrix& g);

// Exact row reduction over F_q(T).
std::vector<int> rat_rref(std::vector<std::vector<RatFunc>>& rows, int ncols);
std::vector<std::vector<RatFunc>> rat_kernel(const Matrix<RatFunc>& m);
int rat_rank(const Matrix<RatFunc>& m);

}  // namespace lf
