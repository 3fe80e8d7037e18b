#include "doctest.h"

#include "lf/extension.hpp"

using namespace lf;

namespace {

LocalFieldExt ext(const FieldPtr& F, const char* poly, int prec = 16) { return build_extension(parse_poly(F.get(), poly), prec); }

}  // namespace

TEST_CASE("canonical form of extensions") {
    auto F3 = FiniteField::make(3);
    auto F2 = FiniteField::make(2);

    LocalFieldExt a = ext(F3, "x^2 - T");
    CHECK(a.e() == 2);
    CHECK(a.f() == 1);

    LocalFieldExt b = ext(F2, "x^2 + x + 1");
    CHECK(b.e() == 1);
    CHECK(b.f() == 2);

    LocalFieldExt c = ext(F2, "x^4 + x^3 + T*x + T^-1");
    CHECK(c.n() == 4);
    CHECK(c.e() * c.f() == 4);

    CHECK_THROWS_AS(ext(F3, "(x - 1)*(x - T)"), Error);
    CHECK_THROWS_AS(ext(F3, "(x^2 - T)^2"), Error);
}

TEST_CASE("ramification reports") {
    auto F3 = FiniteField::make(3);
    auto F2 = FiniteField::make(2);

    RamificationReport r = ramification_report(ext(F3, "x^2 - T"));
    CHECK(r.e == 2);
    CHECK(*r.delta == 1);
    CHECK(*r.sigma == 0);
    CHECK(*r.w == 2);

    r = ramification_report(ext(F2, "x^2 + T*x + T"));
    CHECK(*r.delta == 2);
    CHECK(*r.sigma == 1);
    CHECK(*r.w == 2);

    r = ramification_report(ext(F2, "x^2 + T"));
    CHECK_FALSE(r.separable);
    CHECK_FALSE(r.sigma.has_value());

    r = ramification_report(ext(F2, "x^2 + x + 1"));
    CHECK(r.e == 1);
    CHECK(*r.delta == 0);
    CHECK(*r.w == 2);

    // Tame totally ramified: w = gcd(n, q - 1).
    CHECK(*ramification_report(ext(F3, "x^4 - T")).w == 2);
    CHECK(*ramification_report(ext(FiniteField::make(5), "x^2 - T")).w == 2);
    CHECK(*ramification_report(ext(FiniteField::make(2, 2), "x^3 - T")).w == 3);
    CHECK(*ramification_report(ext(F2, "x^3 + T")).w == 1);

    // Wild: delta read off a non-Eisenstein generator agrees with its Eisenstein form.
    r = ramification_report(ext(F2, "x^2 + T^-1*x + T^-3"));
    CHECK(r.separable);
    CHECK(r.e * r.f == 2);
}

TEST_CASE("roots and isomorphism") {
    auto F3 = FiniteField::make(3);
    auto F2 = FiniteField::make(2);
    LocalFieldExt a = ext(F3, "x^2 - T");
    CHECK(roots_in_extension(parse_poly(F3.get(), "x^2 - T"), a).size() == 2);
    CHECK(roots_in_extension(parse_poly(F3.get(), "x^2 - T"), ext(F3, "x - 1")).empty());
    CHECK(roots_in_extension(parse_poly(F2.get(), "x^2 + T*x + T"), ext(F2, "x^2 + T*x + T")).size() == 2);

    CHECK(is_isomorphic(a, a));
    CHECK_FALSE(is_isomorphic(a, ext(F3, "x^2 - 2*T")));
    CHECK(is_isomorphic(a, ext(F3, "x^2 - T - T^2")));
    CHECK(is_isomorphic(a, ext(F3, "x^2 - T^3")));
    CHECK_FALSE(is_isomorphic(a, ext(F3, "x^2 - 2")));
}

TEST_CASE("valuations and norms in extensions") {
    auto F2 = FiniteField::make(2);
    LocalFieldExt E = ext(F2, "x^4 + T*x^2 + T^2*x + T", 20);
    REQUIRE(E.origin_root().has_value());
    ExtElem x = *E.origin_root();
    CHECK(E.from_base(parse_series(F2.get(), "T")).valuation() == E.e());
    for (int k = 1; k < 5; ++k) {
        ExtElem y = x.pow(k) + E.from_base(Series::monomial(F2.get(), 1, k % 3));
        const Series nm = determinant(E.regular_rep(y));
        CHECK(nm.valuation() == E.f() * y.valuation());
    }
    // The generator satisfies its defining polynomial.
    ExtElem v = x.pow(4) + E.from_base(parse_series(F2.get(), "T")) * x.pow(2) + E.from_base(parse_series(F2.get(), "T^2")) * x +
                E.from_base(parse_series(F2.get(), "T"));
    CHECK(v.val_bound() >= 40);
}
