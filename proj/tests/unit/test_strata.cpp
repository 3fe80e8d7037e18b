#include "doctest.h"
#include "helpers.hpp"

#include "lf/invariants.hpp"
#include "lf/matrix_alg.hpp"
#include "lf/strata.hpp"

using namespace lf;
using testing::mat;
using testing::poly;

namespace {

Vec coords(const FiniteField* F, std::initializer_list<const char*> c) {
    Vec v;
    for (const char* s : c) v.push_back(parse_series(F, s));
    return v;
}

bool zero_to_precision(const Vec& v) {
    for (const auto& s : v)
        if (s.certified_nonzero()) return false;
    return true;
}

Vec pi_pow(const FieldModel& E, int j) {
    Vec out = E.one();
    for (int i = 0; i < j; ++i) out = E.mul(out, E.uniformizer());
    return out;
}

// beta = pi in E = F_3((T))[x]/(x^2 - T), b0 = pi^j u with u of residual
// characteristic polynomial x^2 + 1.
struct Instance {
    FieldPtr F;
    TensorSetting T;
    TameCorestriction s;
    Vec beta;
    EMatrix b0;
    int n = 0, r = 0;
};

Instance ramified_instance(int j) {
    Instance in;
    in.F = FiniteField::make(3);
    const FieldModel E = FieldModel::from_polynomial(poly(in.F, "x^2 - T"));
    in.T = {E, 2, 1};
    in.s = tame_corestriction(E, 48);
    in.beta = E.uniformizer();
    const Vec p = pi_pow(E, j);
    const Vec zero(2, Series::zero(in.F.get()));
    Vec minus = p;
    for (auto& c : minus) c = -c;
    in.b0 = {{zero, minus}, {p, zero}};
    in.n = 1 - 2;
    in.r = -j;
    return in;
}

SeriesMatrix unipotent(const FiniteField* F, int N, int i, int j, int k) {
    SeriesMatrix U = SeriesMatrix::identity(F, N);
    U(i, j) = Series::monomial(F, 1, k);
    return U;
}

}  // namespace

TEST_CASE("tame corestriction, tame case") {
    auto F3 = FiniteField::make(3);
    const FieldModel E = FieldModel::from_polynomial(poly(F3, "x^2 - T"));
    const TameCorestriction s = tame_corestriction(E, 48);
    CHECK(s.x0_is_one);
    // Identity on E.
    for (const Vec& z : {E.one(), E.uniformizer(), coords(F3.get(), {"1 + T", "2*T^-1"})}) {
        const Vec back = s(E.rep(z));
        Vec d = back;
        for (int i = 0; i < 2; ++i) d[i] = back[i] - z[i];
        CHECK(zero_to_precision(d));
    }
    const FieldModel triv = FieldModel::trivial(F3.get());
    const TameCorestriction t = tame_corestriction(triv, 48);
    CHECK(t.x0_is_one);
    Vec w = t(mat(F3, {{"T^3"}}));
    w[0] -= parse_series(F3.get(), "T^3");
    CHECK(zero_to_precision(w));
}

TEST_CASE("tame corestriction, wild quadratic") {
    auto F2 = FiniteField::make(2);
    const FieldModel E = FieldModel::from_polynomial(poly(F2, "x^2 + T*x + T"));
    const TameCorestriction s = tame_corestriction(E, 48);
    CHECK_FALSE(s.x0_is_one);
    CHECK(E.order().contains(s.x0, 0));
    Vec d = s(s.x0);
    d[0] -= Series::one(F2.get());
    CHECK(zero_to_precision(d));

    // Images of the radical powers are the ideal powers.
    for (int k = -2; k <= 2; ++k) {
        CAPTURE(k);
        const Lattice img = image(s.map, E.order().radical_power(k));
        std::vector<int> ex(2);
        for (int i = 0; i < 2; ++i) ex[i] = E.order().exponent(i, 0, k);
        const Lattice ideal = Lattice::diagonal(F2.get(), ex);
        CHECK(img.contains(ideal));
        CHECK(ideal.contains(img));
    }

    // Bimodule property and vanishing on the image of ad.
    const SeriesMatrix X = mat(F2, {{"1 + T", "T^-1"}, {"T^2", "1"}});
    const Vec a = coords(F2.get(), {"1", "T"}), b = coords(F2.get(), {"T^-1", "1 + T"});
    const Vec lhs = s(E.rep(a) * X * E.rep(b));
    const Vec rhs = E.mul(a, E.mul(s(X), b));
    Vec diff = lhs;
    for (int i = 0; i < 2; ++i) diff[i] = lhs[i] - rhs[i];
    CHECK(zero_to_precision(diff));
    const SeriesMatrix p = E.rep(E.uniformizer());
    CHECK(zero_to_precision(s(p * X - X * p)));
}

TEST_CASE("splitting against beta") {
    Instance in = ramified_instance(2);
    const TensorSetting& T = in.T;
    const SeriesMatrix bm = T.embed(in.beta);

    SUBCASE("pure corestriction part") {
        const SeriesMatrix v = T.tensor(in.s.x0, in.b0);
        const Split sp = split_against_beta(T, in.s, in.beta, v, 2, 48);
        CHECK(all_of(sp.y.data().begin(), sp.y.data().end(), [](const Series& c) { return !c.certified_nonzero(); }));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Vec d = sp.b[i][j];
                for (int k = 0; k < 2; ++k) d[k] -= in.b0[i][j][k];
                CHECK(zero_to_precision(d));
            }
    }
    SUBCASE("commutator part") {
        const SeriesMatrix y0 = unipotent(in.F.get(), 4, 0, 3, 1) - SeriesMatrix::identity(in.F.get(), 4);
        const SeriesMatrix v = bm * y0 - y0 * bm;
        const Split sp = split_against_beta(T, in.s, in.beta, v, T.order().valuation(v), 48);
        for (const auto& row : sp.b)
            for (const auto& z : row) CHECK(zero_to_precision(z));
        CHECK(sp.residual_valuation > 80);
    }
    SUBCASE("general element") {
        const SeriesMatrix v = mat(in.F, {{"T^2", "T", "T^3", "2*T"}, {"T + T^2", "T^2", "T^2", "T"}, {"T^2", "T^3", "2*T^2", "T"}, {"T^4", "T^2", "T^2", "T^2"}});
        const int k = T.order().valuation(v);
        const Split sp = split_against_beta(T, in.s, in.beta, v, k, 48);
        CHECK(sp.residual_valuation > 80);
        CHECK(T.order().contains(sp.y, 0));
        CHECK(T.order().contains(bm * sp.y - sp.y * bm, k));
        CHECK(T.block_contains(sp.b, k));
    }
}

TEST_CASE("stratum flags") {
    auto F3 = FiniteField::make(3);
    const FieldModel E = FieldModel::from_polynomial(poly(F3, "x^2 - T"));
    const SeriesMatrix pi = E.rep(E.uniformizer());
    StratumFlags fl = stratum_flags({E.order(), -1, -2, pi});
    CHECK(fl.pure);
    CHECK(fl.simple);
    CHECK(*fl.k0 == 1);

    fl = stratum_flags({HereditaryOrder::standard(F3.get(), 1, 2), -1, -2, mat(F3, {{"T", "0"}, {"0", "T"}})});
    CHECK(fl.simple);
    CHECK_FALSE(fl.k0.has_value());

    // 1 + T pi: k_F = 3 and n_F = 0.
    const SeriesMatrix g = E.rep(coords(F3.get(), {"1", "T"}));
    fl = stratum_flags({E.order(), 0, -3, g});
    CHECK(fl.pure);
    CHECK_FALSE(fl.simple);
    CHECK(*fl.k0 == 3);
    CHECK(stratum_flags({E.order(), 0, -4, g}).simple);

    // Wrong order: M_2(o) is not normalised by E^x.
    fl = stratum_flags({HereditaryOrder::standard(F3.get(), 1, 2), 0, -1, pi});
    CHECK_FALSE(fl.normalizes);
    CHECK_FALSE(fl.pure);
}

TEST_CASE("stratum characteristic polynomial") {
    auto F3 = FiniteField::make(3);
    const FieldModel E = FieldModel::from_polynomial(poly(F3, "x^2 - 2*T"));
    const Stratum S{E.order(), -1, -2, E.rep(E.uniformizer())};
    // y = T^{-1} pi^2 = 2, so (x - 2)^2.
    CHECK(stratum_char_poly(S) == std::vector<Fq>{1, 2, 1});
    Stratum S2 = S;
    S2.gamma = S.gamma + mat(F3, {{"T", "T^2"}, {"T^2", "T"}});
    REQUIRE(strata_equivalent(S, S2));
    CHECK(stratum_char_poly(S2) == stratum_char_poly(S));

    const Stratum central{HereditaryOrder::standard(F3.get(), 1, 2), -2, -3, mat(F3, {{"T^2", "0"}, {"0", "T^2"}})};
    CHECK(stratum_char_poly(central) == std::vector<Fq>{1, 1, 1});
}

TEST_CASE("approximation fixed point and round trip") {
    Instance in = ramified_instance(2);
    const TensorSetting& T = in.T;
    const FiniteField* F = in.F.get();
    CHECK(*k0_of_embedded(T, in.beta) == 1);
    const SeriesMatrix g0 = T.embed(in.beta) + T.tensor(in.s.x0, in.b0);

    SUBCASE("fixed point") {
        const Approximation ap = approximate_given_beta(T, in.s, in.beta, in.r, g0, 48);
        CHECK(ap.steps == 1);
        const SeriesMatrix dg = ap.g - SeriesMatrix::identity(F, 4);
        CHECK(std::none_of(dg.data().begin(), dg.data().end(), [](const Series& c) { return c.certified_nonzero(); }));
        CHECK(ap.b_in_order);
        CHECK(ap.g_in_group);
    }
    SUBCASE("conjugated") {
        // Square-zero unipotents, so the inverse is exact.
        const SeriesMatrix I = SeriesMatrix::identity(F, 4);
        const SeriesMatrix h1 = unipotent(F, 4, 0, 2, 1), h2 = unipotent(F, 4, 3, 1, 2);
        const SeriesMatrix gamma = h1 * h2 * g0 * ((I + I - h2) * (I + I - h1));
        const Approximation ap = approximate_given_beta(T, in.s, in.beta, in.r, gamma, 48);
        CHECK(ap.g_in_group);
        CHECK(ap.b_in_order);
        CHECK(ap.steps >= 1);

        MinApproxSequence seq;
        const SeriesMatrix b_exact = truncate_exact(T.block_matrix(ap.b));
        EMatrix b(2, std::vector<Vec>(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b[i][j] = b_exact.block(2 * i, 2 * j, 2, 2).col(0);
        seq.gammas = {T.embed(in.beta) + T.tensor(in.s.x0, b), T.embed(in.beta)};
        seq.levels = {{T, in.s, in.beta, in.s.x0, b}};
        seq.order = T.order();
        seq.n = {-1, -1};
        seq.r = {-2, -1};
        seq.e = {2, 2};
        seq.f = {2, 1};
        const Report rep = verify_min_approx_sequence(seq);
        for (const auto& v : rep.violations) FAIL_CHECK(v);

        // A scalar derived element is not elliptic.
        MinApproxSequence bad = seq;
        bad.levels[0].b = {{pi_pow(T.E, 2), Vec(2, Series::zero(F))}, {Vec(2, Series::zero(F)), pi_pow(T.E, 2)}};
        bad.gammas[0] = T.embed(in.beta) + T.tensor(in.s.x0, bad.levels[0].b);
        CHECK_FALSE(verify_min_approx_sequence(bad).ok());
    }
    SUBCASE("precondition") {
        const SeriesMatrix far = g0 + mat(in.F, {{"T^-3", "0", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "0"}});
        CHECK_THROWS(approximate_given_beta(T, in.s, in.beta, in.r, far, 48));
    }
}

TEST_CASE("length zero sequence") {
    auto F3 = FiniteField::make(3);
    MinApproxSequence seq;
    seq.gammas = {companion(poly(F3, "x^2 - T"))};
    seq.n = {-1};
    seq.r = {-1};
    seq.e = {2};
    seq.f = {1};
    CHECK(verify_min_approx_sequence(seq).ok());
    seq.gammas = {companion(poly(F3, "x^2 - 2*x + 1 + T^2"))};
    CHECK_FALSE(verify_min_approx_sequence(seq).ok());
}

TEST_CASE("refinement data") {
    Instance in = ramified_instance(2);
    RefinementData data{in.T, in.s, in.beta, in.b0, in.n, in.r};
    RefinementReport rep = verify_refinement(data);
    for (const auto& v : rep.violations) FAIL_CHECK(v);
    CHECK(*rep.k0 == 2);
    CHECK(rep.e == 2);
    CHECK(rep.f == 2);

    // E[b] = E: k0 of the sum is that of beta.
    const Vec p2 = pi_pow(in.T.E, 3);
    const Vec zero(2, Series::zero(in.F.get()));
    data.b = {{p2, zero}, {zero, p2}};
    data.r = -3;
    rep = verify_refinement(data);
    CHECK(*rep.k0 == *rep.predicted_k0);
    CHECK(*rep.k0 == 1);

    data.b = in.b0;
    data.r = -3;
    CHECK_FALSE(verify_refinement(data).ok());
}
