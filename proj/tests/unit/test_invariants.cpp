#include "doctest.h"
#include "helpers.hpp"

#include "lf/invariants.hpp"

using namespace lf;
using testing::mat;
using testing::poly;

namespace {

void check_clean(const EllipticInvariants& inv) {
    for (const auto& m : check_identities(inv)) FAIL_CHECK(m);
}

}  // namespace

TEST_CASE("uniformizers of totally ramified extensions") {
    auto F3 = FiniteField::make(3);
    for (const char* chi : {"x^2 - T", "x^2 + T", "x^4 - T"}) {
        CAPTURE(chi);
        EllipticInvariants inv = elliptic_invariants(poly(F3, chi));
        const int n = inv.N;
        CHECK(inv.e == n);
        CHECK(inv.n_F == -1);
        CHECK(inv.c_F == 0);
        CHECK(inv.c_tilde == 1 - n);
        CHECK(inv.minimal);
        CHECK(inv.k_tilde == 0);
        CHECK(*inv.k_F == 1);
        CHECK(inv.eta_G_exp == 0);
        CHECK(inv.mu_exp == 0);
        // Tame: nu(D_F) = delta + 1 - n.
        CHECK(*inv.nu_D == *inv.delta + 1 - n);
        check_clean(inv);
    }
}

TEST_CASE("inverse uniformizer and scaling") {
    auto F3 = FiniteField::make(3);
    // x^2 - 1/T has root pi^{-1}; scale by T: x^2 - T.
    EllipticInvariants a = elliptic_invariants(poly(F3, "x^2 - T"));
    EllipticInvariants b = elliptic_invariants(poly(F3, "x^2 - T^3"));
    // T pi: c(z gamma) = c(gamma) + e(n-1)nu(z).
    CHECK(b.c_F == a.c_F + 2);
    CHECK(b.c_tilde == a.c_tilde);
    CHECK(b.eta_G_exp == a.eta_G_exp);
    CHECK(b.eta_g_exp == a.eta_g_exp + 2);
    check_clean(b);
}

TEST_CASE("unramified and non-minimal elements") {
    auto F3 = FiniteField::make(3);
    // Unramified quadratic: x^2 + 1 is irreducible over F_3.
    EllipticInvariants u = elliptic_invariants(poly(F3, "x^2 + 1"));
    CHECK(u.e == 1);
    CHECK(u.f == 2);
    CHECK(u.minimal);
    CHECK(u.c_F == 0);
    check_clean(u);

    // 1 + T*i with i^2 = -1: the residue is in F_3, so not minimal.
    EllipticInvariants v = elliptic_invariants(poly(F3, "x^2 - 2*x + 1 + T^2"));
    CHECK_FALSE(v.minimal);
    CHECK(v.k_tilde > 0);
    CHECK(v.mu_exp > 0);
    CHECK(v.c_F == 1);
    CHECK(v.mu_exp == 2);
    check_clean(v);
}

TEST_CASE("wild quadratic extension") {
    auto F2 = FiniteField::make(2);
    EllipticInvariants pi = elliptic_invariants(poly(F2, "x^2 + T*x + T"));
    CHECK(pi.minimal);
    CHECK(pi.c_tilde == -1);
    CHECK(*pi.delta == 2);
    check_clean(pi);

    // pi + pi^3 u style perturbations of pi and pi^2 + pi.
    for (const char* chi : {"x^2 + T^3*x + T^3", "x^2 + T^3*x + T^5", "x^2 + T^2*x + T^3 + T^4", "x^2 + T*x + 1"}) {
        CAPTURE(chi);
        EllipticInvariants inv = elliptic_invariants(poly(F2, chi));
        check_clean(inv);
    }
    // 1 + pi has even valuation, so it is not minimal.
    EllipticInvariants one_pi = elliptic_invariants(poly(F2, "x^2 + T*x + 1"));
    CHECK_FALSE(one_pi.minimal);
    CHECK(one_pi.k_tilde > 0);
}

TEST_CASE("inseparable elements") {
    auto F2 = FiniteField::make(2);
    EllipticInvariants inv = elliptic_invariants(poly(F2, "x^2 + T"));
    CHECK_FALSE(inv.separable);
    CHECK_FALSE(inv.nu_D.has_value());
    CHECK(inv.minimal);
    check_clean(inv);
    inv = elliptic_invariants(poly(F2, "x^2 + T^3"));
    CHECK(inv.minimal);
    check_clean(inv);
    inv = elliptic_invariants(poly(F2, "x^2 + T + 1"));
    CHECK_FALSE(inv.minimal);
    check_clean(inv);
}

TEST_CASE("quasi-regular elements") {
    auto F3 = FiniteField::make(3);
    QuasiRegularInvariants d = quasi_regular_invariants(mat(F3, {{"1", "0"}, {"0", "T"}}));
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.dMG_val == -1);
    CHECK(*d.eta_G_exp == -1);
    CHECK(d.dmg_val == 0);

    QuasiRegularInvariants one = quasi_regular_invariants(mat(F3, {{"T"}}));
    CHECK(one.eta_g_exp == 0);
    CHECK(*one.eta_G_exp == 0);

    // Singular: eta_G is absent, eta_g is not.
    QuasiRegularInvariants s = quasi_regular_invariants(mat(F3, {{"0", "0"}, {"0", "1"}}));
    CHECK_FALSE(s.eta_G_exp.has_value());
    CHECK(s.eta_g_exp == 0);

    CHECK_THROWS_AS(quasi_regular_invariants(mat(F3, {{"T", "0"}, {"0", "T"}})), Error);
}

TEST_CASE("descent constant") {
    auto F3 = FiniteField::make(3);
    CHECK(descent_lambda(poly(F3, "x^2 - T"), 1) == -1);
    CHECK(descent_lambda(poly(F3, "x^2 - T"), 2) == -4);
    CHECK_THROWS_AS(descent_lambda(poly(F3, "x - T"), 2), Error);
}

TEST_CASE("cache keys on the characteristic polynomial") {
    auto F3 = FiniteField::make(3);
    InvariantCache cache;
    auto g = companion(poly(F3, "x^2 - T"));
    auto h = mat(F3, {{"1", "1"}, {"0", "1"}});
    auto hi = mat(F3, {{"1", "-1"}, {"0", "1"}});
    quasi_regular_invariants(g, &cache);
    quasi_regular_invariants(h * g * hi, &cache);
    CHECK(cache.size() == 1);
}
