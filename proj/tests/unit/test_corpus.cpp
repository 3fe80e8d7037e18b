#include <random>

#include "doctest.h"

#include "lf/corpus.hpp"
#include "lf/matrix_alg.hpp"

using namespace lf;

TEST_CASE("corpus is reproducible and split by family") {
    const auto a = generate_corpus(2, 12, 99);
    const auto b = generate_corpus(2, 12, 99);
    REQUIRE(a.size() == 12);
    int per[3] = {0, 0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].gamma == b[i].gamma);
        ++per[static_cast<int>(a[i].family)];
        // chi is the characteristic polynomial of gamma
        CHECK(char_min_invariant(a[i].gamma).charpoly == a[i].chi);
    }
    CHECK(per[0] == 4);
    CHECK(per[1] == 4);
    CHECK(per[2] == 4);
}

TEST_CASE("fixed tame residue field gives only tame elements") {
    for (const auto& c : generate_corpus(2, 6, 5, 3)) {
        CHECK(c.family == Family::Tame);
        CHECK(c.field->q() == 3);
    }
}

TEST_CASE("unimodular conjugation is invertible") {
    auto F = FiniteField::make_q(5);
    std::mt19937_64 rng(1);
    const Unimodular u = random_unimodular(F.get(), 3, rng);
    const auto id = u.g * u.inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? Series::one(F.get()) : Series::zero(F.get())));
}
