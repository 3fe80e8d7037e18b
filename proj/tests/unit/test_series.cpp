#include "doctest.h"

#include "lf/finite_field.hpp"
#include "lf/series.hpp"

using namespace lf;

TEST_CASE("finite field tables") {
    auto F4 = FiniteField::make(2, 2);
    CHECK(F4->q() == 4);
    Fq g = F4->gen();
    CHECK(F4->mul(g, F4->mul(g, g)) == 1);  // X^3 = 1 in F_4
    auto F9 = FiniteField::make(3, 2);
    for (Fq a = 1; a < 9; ++a) CHECK(F9->mul(a, F9->inv(a)) == 1);
    CHECK(F9->pow(F9->primitive(), 8) == 1);
    CHECK(F9->pow(F9->primitive(), 4) != 1);
}

TEST_CASE("field embedding") {
    auto F2 = FiniteField::make(2, 2);
    auto F4 = FiniteField::make(2, 4);
    FieldEmbedding emb(F2, F4);
    for (Fq a = 0; a < 4; ++a)
        for (Fq b = 0; b < 4; ++b) {
            CHECK(emb(F2->mul(a, b)) == F4->mul(emb(a), emb(b)));
            CHECK(emb(F2->add(a, b)) == F4->add(emb(a), emb(b)));
        }
}

TEST_CASE("series precision propagation") {
    auto F = FiniteField::make(3);
    Series a = parse_series(F.get(), "T + O(T^5)");
    Series b = parse_series(F.get(), "T^-1 + O(T^3)");
    Series c = a * b;
    CHECK(c.to_string() == "1 + O(T^4)");
    CHECK_THROWS_AS(Series::zero(F.get()).inverse(), Error);
    try {
        (void)Series::zero(F.get()).inverse();
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivisionByZero);
    }
}

TEST_CASE("char 2 cancellation") {
    auto F = FiniteField::make(2);
    Series a = parse_series(F.get(), "1 + T");
    CHECK((a * a).to_string() == "1 + T^2");
    Series b = parse_series(F.get(), "1 + T + O(T^6)");
    CHECK((b * b).to_string() == "1 + T^2 + O(T^6)");
}

TEST_CASE("valuation rules") {
    auto F = FiniteField::make(5);
    Series a = parse_series(F.get(), "2*T^2 + T^3 + O(T^8)");
    Series b = parse_series(F.get(), "3*T^-1 + 4 + O(T^4)");
    CHECK((a * b).valuation() == 1);
    CHECK((a + b).valuation() == -1);
    Series z = a - a;
    CHECK(z.is_zero());
    CHECK_FALSE(z.is_exact_zero());
    CHECK_THROWS(z.valuation());
    CHECK_THROWS(z.inverse());
}

TEST_CASE("inverse of exact non-monomial needs a cap") {
    auto F = FiniteField::make(3);
    Series a = parse_series(F.get(), "1 + T");
    CHECK_THROWS(a.inverse());
    Series inv = a.inverse(5);
    CHECK((a * inv).to_string() == "1 + O(T^5)");
}

TEST_CASE("series text round trip") {
    auto F = FiniteField::make(3);
    for (const char* s : {"T^-1 + 1 + T^3", "2*T^-2 + O(T^4)", "0", "O(T^3)", "1", "2 + 2*T"}) {
        Series x = parse_series(F.get(), s);
        CHECK(x.to_string() == s);
        CHECK(parse_series(F.get(), x.to_string()) == x);
    }
    auto F9 = FiniteField::make(3, 2);
    Series y = parse_series(F9.get(), "[1,2]*T + [0,1]*T^2 + O(T^5)");
    CHECK(y.to_string() == "[1,2]*T + [0,1]*T^2 + O(T^5)");
    CHECK(parse_series(F9.get(), y.to_string()) == y);
    CHECK(parse_series(F.get(), "-T^(-2) + 1").to_string() == "2*T^-2 + 1");
    CHECK_THROWS_AS(parse_series(F.get(), "T^"), Error);
}

TEST_CASE("ring axioms on random series") {
    auto F = FiniteField::make(2, 3);
    unsigned seed = 12345;
    auto rnd = [&seed]() {
        seed = seed * 1103515245u + 12345u;
        return (seed >> 16) & 0x7fff;
    };
    auto random_series = [&](int prec) {
        Series::Coeffs c;
        int v = static_cast<int>(rnd() % 4) - 1;
        for (int i = v; i < prec; ++i) c.push_back(static_cast<Fq>(rnd() % 8));
        c[0] = static_cast<Fq>(1 + rnd() % 7);
        return Series::from_coeffs(F.get(), v, c, prec);
    };
    for (int t = 0; t < 50; ++t) {
        Series a = random_series(8), b = random_series(8), c = random_series(8);
        CHECK(((a * b) * c).agrees_with(a * (b * c)));
        CHECK((a * (b + c)).agrees_with(a * b + a * c));
        CHECK((a * b).valuation() == a.valuation() + b.valuation());
        if (a.valuation() != b.valuation())
            CHECK((a + b).valuation() == std::min(a.valuation(), b.valuation()));
        CHECK((a * a.inverse()).agrees_with(Series::one(F.get())));
    }
}
