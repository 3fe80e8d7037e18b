#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

#include "lf/error.hpp"
#include "lf/local_poly.hpp"
#include "lf/mass.hpp"

using namespace lf;
using testing::poly;

TEST_CASE("full Eisenstein catalogs have the expected size") {
    auto F2 = FiniteField::make_q(2);
    auto F3 = FiniteField::make_q(3);
    const auto c = enumerate_eisenstein(F2, 2, 4);
    CHECK(c.entries.size() == 32);
    for (const auto& e : c.entries) CHECK(is_eisenstein(e.poly));
    // a_1 in p mod p^3: 9 choices, a_0: 2 * 3
    CHECK(enumerate_eisenstein(F3, 2, 3).entries.size() == 54);
    CHECK(enumerate_eisenstein(F3, 1, 2).entries.size() == 2);
    CHECK(eisenstein_count(2, 2, 4) == 32);
    CHECK(eisenstein_count(3, 4, 8) == BigInt("15251194969974"));
    CHECK_THROWS_AS(enumerate_eisenstein(F3, 4, 8, 1000), Error);

    // entries are distinct residue classes
    std::set<std::string> seen;
    for (const auto& e : c.entries) seen.insert(to_string(e.poly));
    CHECK(seen.size() == c.entries.size());
}

TEST_CASE("Krasner cells partition the catalog") {
    auto F2 = FiniteField::make_q(2);
    auto F5 = FiniteField::make_q(5);
    for (int M : {4, 6, 8}) {
        const auto k = krasner_cells(F2, 2, M);
        CHECK(k.total() == eisenstein_count(2, 2, M));
    }
    const auto k5 = krasner_cells(F5, 2, 8);
    CHECK(k5.total() == eisenstein_count(5, 2, 8));
    CHECK(k5.entries.size() == 20);  // tame cells stop at depth 2
}

TEST_CASE("clustering agrees between full and Krasner catalogs") {
    auto F2 = FiniteField::make_q(2);
    const auto full = cluster_classes(enumerate_eisenstein(F2, 2, 6));
    const auto cells = cluster_classes(krasner_cells(F2, 2, 6));
    REQUIRE(full.size() == cells.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK(full[i].delta == cells[i].delta);
        CHECK(full[i].member_count == cells[i].member_count);
        CHECK(full[i].precision_limited == cells[i].precision_limited);
    }
}

TEST_CASE("tame classes") {
    auto F3 = FiniteField::make_q(3);
    const auto cl = cluster_classes(krasner_cells(F3, 2, 6));
    REQUIRE(cl.size() == 2);
    for (const auto& c : cl) {
        CHECK(c.w == 2);
        CHECK(c.sigma == 0);
        CHECK(c.member_fraction == BigRational(1, 2));
    }
    const auto one = cluster_classes(krasner_cells(F3, 1, 4));
    REQUIRE(one.size() == 1);
    CHECK(one[0].w == 1);
    CHECK(one[0].sigma == 0);
}

TEST_CASE("tame mass formulas are exact") {
    for (auto [q, n] : {std::pair{3, 2}, {5, 2}, {2, 3}, {4, 3}}) {
        CAPTURE(q);
        CAPTURE(n);
        const MassSums m = mass_sums(FiniteField::make_q(q), n, 6);
        CHECK(m.sum_totally_ramified == n);
        CHECK(m.weighted == 1);
        CHECK(m.grand_sum == m.grand_target);
        CHECK(check_mass(m).empty());
    }
    const MassSums m = mass_sums(FiniteField::make_q(3), 2, 6);
    CHECK(m.grand_target == BigRational(3, 2));
    CHECK(m.per_e_sums.at(1) == BigRational(1, 2));
}

TEST_CASE("wild q=2 n=2 partial sums") {
    const MassSums m = mass_sums(FiniteField::make_q(2), 2, 8);
    CHECK(check_mass(m).empty());
    // 2^j classes at delta = 2j, each with w = 2 and sigma = 2j - 1.
    std::map<int, int> per_delta;
    for (const auto& c : m.classes)
        if (!c.precision_limited) {
            CHECK(c.w == 2);
            ++per_delta[*c.delta];
        }
    CHECK(per_delta == std::map<int, int>{{2, 2}, {4, 4}, {6, 8}});
    CHECK(m.partial.at(2) == 1);
    CHECK(m.partial.at(6) == BigRational(7, 4));
    CHECK(m.sum_totally_ramified == BigRational(7, 4));
    // x^2 - T is the inseparable residue class.
    CHECK_FALSE(m.classes.back().separable);
    CHECK(m.classes.back().representative == poly(FiniteField::make_q(2), "x^2 + T"));
}
