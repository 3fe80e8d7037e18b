#include "doctest.h"

#include <map>

#include "lf/local_poly.hpp"
#include "lf/ratfunc.hpp"
#include "lf/smith.hpp"

using namespace lf;

namespace {

SeriesMatrix mat(const FiniteField* F, const std::vector<std::vector<const char*>>& rows) {
    SeriesMatrix m(F, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = parse_series(F, rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("polynomial parse and print") {
    auto F = FiniteField::make(3);
    SeriesPoly f = parse_poly(F.get(), "x^2 - T");
    CHECK(f.degree() == 2);
    CHECK(to_string(f) == "x^2 + 2*T");
    CHECK(to_list_string(f) == "[2*T, 0, 1]");
    CHECK(parse_poly(F.get(), to_list_string(f)) == f);
    CHECK(parse_poly(F.get(), to_string(f)) == f);
    SeriesPoly g = parse_poly(F.get(), "(1 + T)*x^3 + T^-1*x + 2");
    CHECK(parse_poly(F.get(), to_string(g)) == g);
    CHECK(parse_poly(F.get(), "[1, T^-1 + O(T^3), 1]").coeffs()[1].precision() == 3);
    CHECK_THROWS_AS(parse_poly(F.get(), "x^2 +"), Error);
    auto F4 = FiniteField::make(2, 2);
    SeriesPoly h = parse_poly(F4.get(), "x^2 + [0,1]*T*x + T");
    CHECK(parse_poly(F4.get(), to_string(h)) == h);
    CHECK(parse_poly(F4.get(), to_list_string(h)) == h);
}

TEST_CASE("newton polygon") {
    auto F3 = FiniteField::make(3);
    auto np = newton_polygon(parse_poly(F3.get(), "x^2 - T"));
    REQUIRE(np.size() == 1);
    CHECK(np[0].slope == Rational(-1, 2));
    CHECK(np[0].length == 2);
    np = newton_polygon(parse_poly(F3.get(), "x^2 - 1"));
    REQUIRE(np.size() == 1);
    CHECK(np[0].slope == Rational(0));
    auto F2 = FiniteField::make(2);
    // hull of (0,1), (1,1), (3,0): single segment from (0,1) to (3,0)
    np = newton_polygon(parse_poly(F2.get(), "x^3 + T*x + T"));
    REQUIRE(np.size() == 1);
    CHECK(np[0].slope == Rational(-1, 3));
    CHECK(np[0].length == 3);
    np = newton_polygon(parse_poly(F3.get(), "x^3 + x^2 + T^2"));
    REQUIRE(np.size() == 2);
    CHECK(np[0].slope == Rational(-1));
    CHECK(np[0].length == 2);
    CHECK(np[1].slope == Rational(0));
    CHECK_THROWS(newton_polygon(parse_poly(F3.get(), "x^2 + O(T^1)*x + T^3")));
}

TEST_CASE("newton polygon of a product is the Minkowski sum") {
    auto F = FiniteField::make(5);
    const char* polys[] = {"x^2 - T", "x^3 + T^2*x + T^4", "x^2 + x + T", "x - T^3", "x^3 + T*x^2 + T^5"};
    for (const char* a : polys)
        for (const char* b : polys) {
            SeriesPoly f = parse_poly(F.get(), a), g = parse_poly(F.get(), b);
            auto pf = newton_polygon(f), pg = newton_polygon(g), pfg = newton_polygon(f * g);
            // Compare slope multisets with lengths.
            std::map<Rational, int> want, got;
            for (auto& s : pf) want[s.slope] += s.length;
            for (auto& s : pg) want[s.slope] += s.length;
            for (auto& s : pfg) got[s.slope] += s.length;
            CHECK(want == got);
        }
}

TEST_CASE("eisenstein") {
    auto F2 = FiniteField::make(2);
    CHECK(is_eisenstein(parse_poly(F2.get(), "x^2 + T*x + T")));
    CHECK_FALSE(is_eisenstein(parse_poly(F2.get(), "x^2 - 1")));
    CHECK_FALSE(is_eisenstein(parse_poly(F2.get(), "x^2 + T^2")));
}

TEST_CASE("krasner radius and discriminant") {
    auto F3 = FiniteField::make(3);
    auto F2 = FiniteField::make(2);
    CHECK(discriminant_valuation(parse_poly(F3.get(), "x^2 - T")) == 1);
    CHECK(krasner_radius(parse_poly(F3.get(), "x^2 - T")) == 2);
    CHECK(krasner_radius(parse_poly(F3.get(), "x - 1")) == 1);
    CHECK(discriminant_valuation(parse_poly(F2.get(), "x^2 + T*x + T")) == 2);
    CHECK(krasner_radius(parse_poly(F2.get(), "x^2 + T*x + T")) == 3);
    CHECK_THROWS_AS(krasner_radius(parse_poly(F2.get(), "x^2 - T")), Error);
}

TEST_CASE("berkowitz characteristic polynomial") {
    auto F = FiniteField::make(3);
    SeriesPoly f = parse_poly(F.get(), "x^3 + T*x + T^2 + 1");
    CHECK(berkowitz(companion(f)) == f);
    SeriesMatrix m = mat(F.get(), {{"1", "T"}, {"T^-1", "2"}});
    // det(xI - m) = x^2 - 3x + (2 - 1) = x^2 + 1 over F_3
    CHECK(to_string(berkowitz(m)) == "x^2 + 1");
    CHECK(determinant(m) == Series::one(F.get()));
}

TEST_CASE("invariant factors") {
    auto F = FiniteField::make(3);
    const auto* Fp = F.get();
    SeriesMatrix d = mat(Fp, {{"T", "0"}, {"0", "T"}});
    auto key = invariant_factors(to_ratmatrix(d));
    REQUIRE(key.size() == 2);
    CHECK(to_string(to_seriespoly(key[0], 10)) == "x + 2*T");
    CHECK(to_string(to_seriespoly(key[1], 10)) == "x + 2*T");
    SeriesMatrix e = mat(Fp, {{"1", "0"}, {"0", "T"}});
    key = invariant_factors(to_ratmatrix(e));
    REQUIRE(key.size() == 1);
    CHECK(to_seriespoly(key[0], 10) == parse_poly(Fp, "(x - 1)*(x - T)") );
    SeriesPoly f = parse_poly(Fp, "x^2 - T");
    key = invariant_factors(to_ratmatrix(companion(f)));
    REQUIRE(key.size() == 1);
    CHECK(to_seriespoly(key[0], 10) == f);
    // The same over inexact series.
    auto skey = invariant_factors(capped(companion(f), 8));
    REQUIRE(skey.size() == 1);
    CHECK(skey[0].degree() == 2);
}

TEST_CASE("squarefree over F_q((T))") {
    auto F2 = FiniteField::make(2);
    const auto* F = F2.get();
    CHECK(is_squarefree(parse_poly(F, "x^2 - T")));         // inseparable but squarefree
    CHECK_FALSE(is_squarefree(parse_poly(F, "x^2 + 1")));   // (x+1)^2
    CHECK_FALSE(is_squarefree(parse_poly(F, "x^2 + T^2"))); // (x+T)^2
    CHECK(is_squarefree(parse_poly(F, "x^2 + T*x + T")));
    SeriesPoly f = parse_poly(F, "(x^2 + T)*(x^2 + T)*(x + 1)");
    auto parts = squarefree_decomposition(to_ratpoly(f));
    REQUIRE(parts.size() == 2);
    int total = 0;
    for (auto& [g, m] : parts) total += g.degree() * m;
    CHECK(total == 5);
    auto F3 = FiniteField::make(3);
    SeriesPoly h = parse_poly(F3.get(), "(x^3 - T)*(x^3 - T)*(x^3 - T)*(x - 1)");
    auto ph = squarefree_decomposition(to_ratpoly(h));
    std::map<int, int> mult;
    for (auto& [g, m] : ph) mult[m] += g.degree();
    CHECK(mult[3] == 3);
    CHECK(mult[1] == 1);
}
