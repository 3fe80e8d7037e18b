#include "doctest.h"

#include <random>

#include "lf/lattice.hpp"

using namespace lf;

namespace {

Vec vec(const FiniteField* F, std::initializer_list<const char*> xs) {
    Vec v;
    for (const char* x : xs) v.push_back(parse_series(F, x));
    return v;
}

Lattice random_lattice(const FiniteField* F, int m, std::mt19937& rng) {
    std::vector<Vec> gens;
    for (int j = 0; j < m + 1; ++j) {
        Vec v;
        for (int i = 0; i < m; ++i) {
            Series::Coeffs c;
            for (int k = 0; k < 4; ++k) c.push_back(static_cast<Fq>(rng() % F->q()));
            v.push_back(Series::from_coeffs(F, static_cast<int>(rng() % 4) - 1, c));
        }
        gens.push_back(v);
    }
    // Adding T^6 o^m keeps the span full rank.
    return Lattice::span(F, m, gens, 6);
}

}  // namespace

TEST_CASE("lattice index basics") {
    auto Fp = FiniteField::make(3);
    const auto* F = Fp.get();
    Lattice o2 = Lattice::standard(F, 2);
    Lattice po = Lattice::diagonal(F, {1, 0});
    CHECK(index_exponent(o2, o2) == 0);
    CHECK(index_exponent(o2, po) == 1);
    CHECK_THROWS_AS(index_exponent(po, o2), Error);
    // [A_max : P_max] in M_2 is q^4.
    CHECK(index_exponent(Lattice::standard(F, 4), Lattice::diagonal(F, {1, 1, 1, 1})) == 4);
}

TEST_CASE("lattice span, sum and intersection") {
    auto Fp = FiniteField::make(2);
    const auto* F = Fp.get();
    Lattice a = Lattice::diagonal(F, {0, 1});
    Lattice b = Lattice::diagonal(F, {1, 0});
    CHECK(a + b == Lattice::standard(F, 2));
    CHECK(intersect(a, b) == Lattice::diagonal(F, {1, 1}));
    // span{(T, 1), (0, T^2)}: index 3 in o^2
    Lattice c = Lattice::span(F, 2, {vec(F, {"T", "1"}), vec(F, {"0", "T^2"})}, 3);
    CHECK(c.det_valuation() == 3);
    CHECK(c.contains(vec(F, {"T", "1 + T^2"})));
    CHECK_FALSE(c.contains(vec(F, {"T", "0"})));
    CHECK(c.contains(vec(F, {"T^3", "0"})));
}

TEST_CASE("lattice preimage") {
    auto Fp = FiniteField::make(5);
    const auto* F = Fp.get();
    SeriesMatrix phi(F, 1, 1);
    phi(0, 0) = parse_series(F, "T^-2");
    CHECK(preimage(phi, Lattice::standard(F, 1), Lattice::standard(F, 1)) == Lattice::diagonal(F, {2}));
    SeriesMatrix sum(F, 1, 2);
    sum(0, 0) = Series::one(F);
    sum(0, 1) = Series::one(F);
    Lattice k = preimage(sum, Lattice::standard(F, 2), Lattice::diagonal(F, {1}));
    CHECK(index_exponent(Lattice::standard(F, 2), k) == 1);
    CHECK(k.contains(vec(F, {"1", "4"})));
    CHECK_FALSE(k.contains(vec(F, {"1", "0"})));
}

TEST_CASE("random lattice identities") {
    auto Fp = FiniteField::make(3);
    const auto* F = Fp.get();
    std::mt19937 rng(2024);
    for (int t = 0; t < 25; ++t) {
        const int m = 2 + t % 3;
        Lattice a = random_lattice(F, m, rng), b = random_lattice(F, m, rng);
        Lattice s = a + b, i = intersect(a, b);
        CHECK(s.contains(a));
        CHECK(s.contains(b));
        CHECK(a.contains(i));
        CHECK(b.contains(i));
        // [a+b : a] = [b : a ∩ b]
        CHECK(index_exponent(s, a) == index_exponent(b, i));
        CHECK(intersect(a, a) == a);
        CHECK(a + a == a);
        CHECK(index_exponent(s, i) == index_exponent(s, a) + index_exponent(a, i));
        // Preimage under a random integral map lands in the target.
        SeriesMatrix phi(F, m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                phi(r, c) = Series::from_coeffs(F, static_cast<int>(rng() % 3) - 1,
                                                {static_cast<Fq>(rng() % 3), static_cast<Fq>(rng() % 3)});
        Lattice k = preimage(phi, a, b);
        CHECK(a.contains(k));
        for (int j = 0; j < m; ++j) CHECK(b.contains(phi.apply(k.basis().col(j))));
    }
}
