#include "doctest.h"

#include "lf/etale.hpp"

using namespace lf;

namespace {

struct Shape {
    int degree, e, f;
    friend bool operator==(const Shape&, const Shape&) = default;
};

std::vector<Shape> shapes(const EtaleAlgebra& A) {
    std::vector<Shape> out;
    for (const auto& c : A.components()) out.push_back({c.degree, c.e, c.f});
    return out;
}

}  // namespace

TEST_CASE("maximal order and splitting") {
    auto F3 = FiniteField::make(3);
    auto F2 = FiniteField::make(2);

    EtaleAlgebra a(parse_poly(F3.get(), "x^2 - T"), 12);
    CHECK(shapes(a) == std::vector<Shape>{{2, 2, 1}});
    CHECK(a.order().det_valuation() == 0);

    EtaleAlgebra b(parse_poly(F3.get(), "(x - 1)*(x - T)"), 12);
    REQUIRE(b.components().size() == 2);
    CHECK(shapes(b) == std::vector<Shape>{{1, 1, 1}, {1, 1, 1}});

    EtaleAlgebra c(parse_poly(F2.get(), "x^2 + x + 1"), 12);
    CHECK(shapes(c) == std::vector<Shape>{{2, 1, 2}});

    EtaleAlgebra d(parse_poly(F2.get(), "x^2 + T"), 12);
    CHECK(shapes(d) == std::vector<Shape>{{2, 2, 1}});

    // o[x] has index q in the maximal order o[x/T].
    EtaleAlgebra g(parse_poly(F3.get(), "x^2 - T^3"), 12);
    CHECK(shapes(g) == std::vector<Shape>{{2, 2, 1}});
    CHECK(g.order().det_valuation() == -1);

    EtaleAlgebra h(parse_poly(F3.get(), "x^4 - T^2"), 12);
    CHECK(shapes(h) == std::vector<Shape>{{2, 2, 1}, {2, 2, 1}});

    EtaleAlgebra k(parse_poly(F2.get(), "(x^2 + x + 1)*(x^3 + T)*(x - T^-1)"), 12);
    CHECK(shapes(k) == std::vector<Shape>{{1, 1, 1}, {2, 1, 2}, {3, 3, 1}});
}

TEST_CASE("local factors multiply back") {
    auto F = FiniteField::make(2);
    SeriesPoly f = parse_poly(F.get(), "(x^2 + T*x + T)*(x^2 + x + T)*(x + 1 + T^2)");
    EtaleAlgebra A(f, 16);
    SeriesPoly prod = SeriesPoly::constant(F.get(), Series::one(F.get()));
    for (const auto& c : A.components()) prod = prod * c.factor;
    REQUIRE(prod.degree() == f.degree());
    for (int i = 0; i <= f.degree(); ++i) CHECK(prod.coeff(i).agrees_with(f.coeff(i)));
    CHECK(A.components().size() == 4);
}
