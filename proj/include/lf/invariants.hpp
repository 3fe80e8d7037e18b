#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lf/orders.hpp"

namespace lf {

// Invariants of a quasi-regular elliptic element.  eta and mu are stored as
// exponents of q: eta_G = q^{-eta_G_exp}, mu = q^{mu_exp}.
struct EllipticInvariants {
    int N = 1, e = 1, f = 1;
    int n_F = 0;
    std::optional<int> k_F;  // absent for -infinity
    int k_tilde = 0;
    int c_F = 0, c_tilde = 0;
    bool minimal = true;
    bool separable = true;
    bool zero = false;  // N = 1 and gamma = 0
    std::optional<int> nu_D, delta, sigma;
    int eta_G_exp = 0, eta_g_exp = 0;
    int mu_exp = 0, mu_plus_exp = 0;
    int precision = 0;  // working precision that certified the results
};

struct QuasiRegularInvariants {
    std::vector<SeriesPoly> block_polys;
    std::vector<EllipticInvariants> blocks;
    int dMG_val = 0;  // nu D_{M\G}; needs gamma invertible
    int dmg_val = 0;  // nu D_{m\g}
    bool invertible = true;
    std::optional<int> eta_G_exp;  // absent when gamma is singular
    int eta_g_exp = 0;
};

// gamma realised in its own field: E = F[gamma], A(E) in the basis of E, and
// the regular representation of gamma.
struct EllipticModel {
    ExtensionOrder ord;
    ExtElem gamma;
    SeriesMatrix rho;
    int precision = 0;
};

// chi: exact monic irreducible polynomial of degree >= 2.
EllipticModel elliptic_model(const SeriesPoly& chi, int prec);

struct KFResult {
    std::optional<int> k_F;
    int k_tilde = 0;
    bool minimal = true;
};

int conductor_c(const EllipticModel& m);
KFResult kF(const EllipticModel& m);
// Both tests of minimality: k_tilde = 0 and the two-condition definition.
bool minimal_by_definition(const EllipticModel& m);
// nu(D_F(gamma)) via an explicit complement of E; absent if inseparable.
std::optional<int> D_valuation(const EllipticModel& m);
struct MuResult {
    int mu_exp = 0, mu_plus_exp = 0;
};
MuResult mu(const EllipticModel& m, int k_F, int k_tilde);

// Full computation for an exact irreducible characteristic polynomial, with
// the precision ladder.
EllipticInvariants elliptic_invariants(const SeriesPoly& chi);

// Memo table keyed on the exact characteristic polynomial; the invariants are
// class functions, so conjugates share an entry.
class InvariantCache {
public:
    const EllipticInvariants& elliptic(const SeriesPoly& chi);
    std::size_t size() const { return table_.size(); }

private:
    std::map<std::string, EllipticInvariants> table_;
};

// gamma exact and quasi-regular.
QuasiRegularInvariants quasi_regular_invariants(const SeriesMatrix& gamma, InvariantCache* cache = nullptr);
QuasiRegularInvariants quasi_regular_invariants_of_poly(const SeriesPoly& chi, InvariantCache* cache = nullptr);

// (q_E^{n_F(beta)} mu_F(beta))^{d^2} as an exponent of q.
int descent_lambda(const SeriesPoly& beta_chi, int d);

// Violated identities, as readable messages; empty when all hold.
std::vector<std::string> check_identities(const EllipticInvariants& inv);
std::vector<std::string> check_identities(const QuasiRegularInvariants& inv);

}  // namespace lf
