#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lf/matrix.hpp"

namespace lf {

enum class Family { Tame, Wild, Inseparable };

const char* to_string(Family f);

// A quasi-regular elliptic matrix with its provenance: gamma = h(theta) for a
// root theta of defining, written in a random o-basis.
struct CorpusEntry {
    FieldPtr field;
    Family family = Family::Tame;
    SeriesPoly defining;  // of theta
    SeriesPoly h;         // gamma = h(theta)
    SeriesPoly chi;       // characteristic polynomial of gamma
    SeriesMatrix gamma;
};

// Exact element of GL(N, o) together with its inverse.
struct Unimodular {
    SeriesMatrix g, inv;
};

Unimodular random_unimodular(const FiniteField* F, int N, std::mt19937_64& rng);
// g X g^{-1}
SeriesMatrix conjugate(const Unimodular& u, const SeriesMatrix& X);

// Evaluation of a polynomial at a square matrix.
SeriesMatrix evaluate(const SeriesPoly& h, const SeriesMatrix& X);

// count entries for the given N, split evenly over the three families.  With
// a fixed q only the families possible for that residue characteristic occur
// (wild and inseparable elements need p | N).
std::vector<CorpusEntry> generate_corpus(int N, int count, std::uint64_t seed, std::optional<int> q = std::nullopt);

// Random exact Laurent polynomial with valuation >= vmin and degree <= vmax.
Series random_laurent(const FiniteField* F, int vmin, int vmax, std::mt19937_64& rng);

}  // namespace lf
