#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lf/orders.hpp"

namespace lf {

// A field E of degree n over F acting on itself, in an o-basis adapted to the
// chain of ideals p_E^i.  Elements of E are coordinate vectors over F.
class FieldModel {
public:
    FieldModel() = default;

    static FieldModel trivial(const FiniteField* F);
    // E = F[x]/(phi) in the power basis.  phi must be exact and either
    // Eisenstein or have unit coefficients with irreducible reduction.
    static FieldModel from_polynomial(const SeriesPoly& phi);
    // E in its basis u_{a,b}.
    static FieldModel from_extension(const LocalFieldExt& E);

    const FiniteField* base() const { return F_; }
    int degree() const { return n_; }
    int e() const { return e_; }
    int f() const { return n_ / e_; }
    const HereditaryOrder& order() const { return order_; }
    const std::optional<SeriesPoly>& polynomial() const { return phi_; }

    Vec one() const;
    Vec uniformizer() const { return pi_; }
    Vec basis_vector(int k) const;
    SeriesMatrix rep(const Vec& z) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec inverse(const Vec& a, int prec) const;
    // nu_E; kExact for zero.
    int valuation(const Vec& z) const;

private:
    const FiniteField* F_ = nullptr;
    int n_ = 1, e_ = 1;
    HereditaryOrder order_;
    std::vector<SeriesMatrix> basis_rep_;
    Vec pi_;
    std::optional<SeriesPoly> phi_;
};

// E regarded as the local field F_{q^f}((pi)).  Available for x^e - cT with
// c a constant, and for unramified power-basis models.
class ResidueBaseChange {
public:
    explicit ResidueBaseChange(const FieldModel& E);

    const FiniteField* field() const { return field_.get(); }
    Series to_series(const Vec& z) const;
    Vec from_series(const Series& s) const;
    SeriesMatrix to_matrix(const std::vector<std::vector<Vec>>& b) const;
    std::vector<std::vector<Vec>> from_matrix(const SeriesMatrix& m) const;

private:
    FieldModel E_;
    FieldPtr field_;
    bool ramified_ = false;
    Fq c_inv_ = 1, c_ = 1;
    std::vector<Fq> theta_pow_;         // unramified: powers of the root
    std::vector<FqVec> theta_coords_;   // unramified: element -> coordinates
    FieldEmbedding emb_;
};

struct Stratum {
    HereditaryOrder order;
    int n = 0, r = 0;
    SeriesMatrix gamma;
};

struct StratumFlags {
    bool pure = false, simple = false;
    bool field = false, normalizes = false;
    int valuation = 0;
    std::optional<int> k0;  // absent for -infinity
    std::vector<std::string> notes;
};

StratumFlags stratum_flags(const Stratum& S, int prec = 48);
bool strata_equivalent(const Stratum& a, const Stratum& b);
// Characteristic polynomial over the residue field of y = T^{n/g} gamma^{e/g}
// (g = gcd(e, n)) on L_0 / p L_0; coefficients lowest degree first.
std::vector<Fq> stratum_char_poly(const Stratum& S);

struct TameCorestriction {
    FieldModel E;
    SeriesMatrix map;  // n x n^2, acting on flattened matrices
    SeriesMatrix x0;
    bool x0_is_one = false;
    Vec operator()(const SeriesMatrix& X) const;
};

TameCorestriction tame_corestriction(const FieldModel& E, int prec);

using EMatrix = std::vector<std::vector<Vec>>;  // d x d over E, in coordinates

// g = A(E) (x)_E M_d(E) acting on E^d; basis vector j*n + k is u_k in slot j.
// B is standard of the given period in M_d(o_E).
struct TensorSetting {
    FieldModel E;
    int d = 1;
    int block_period = 1;

    int dim() const { return E.degree() * d; }
    std::vector<int> block_levels() const;
    HereditaryOrder order() const;
    // beta (x) 1, and a (x) b with blocks a rho(b_ij).
    SeriesMatrix embed(const Vec& beta) const;
    SeriesMatrix tensor(const SeriesMatrix& a, const EMatrix& b) const;
    SeriesMatrix block_matrix(const EMatrix& b) const { return tensor(SeriesMatrix::identity(E.base(), E.degree()), b); }
    EMatrix corestrict(const TameCorestriction& s, const SeriesMatrix& X) const;
    // b in Q^k
    bool block_contains(const EMatrix& b, int k) const;
    int block_valuation(const EMatrix& b) const;
    // Generator of rad(B) as a d x d matrix over E.
    EMatrix radical_generator() const;
};

struct Split {
    SeriesMatrix y;
    EMatrix b;
    int residual_valuation = 0;  // nu_A of v - ad(y) - x b
};

// v = ad_beta(y) + x b with y in N_k and b in Q^k; y is normalised to have
// zero first column in every block.
Split split_against_beta(const TensorSetting& T, const TameCorestriction& s, const Vec& beta, const SeriesMatrix& v, int k,
                         int prec);

struct Approximation {
    SeriesMatrix g, g_inv;
    EMatrix b;
    int steps = 0;
    int residual_valuation = 0;  // nu_A of g gamma g^{-1} - beta - x b
    int gain = 0;                // -r - k0
    bool g_in_group = false;     // g - 1 in Q^gain N_{k0}
    bool b_in_order = false;     // b in Q^{-r}
};

// gamma = g^{-1} (beta + x b) g for [A, n, r, beta] simple and gamma - beta in
// P^{-r}.  Iterates until the residual is below the working precision.
Approximation approximate_given_beta(const TensorSetting& T, const TameCorestriction& s, const Vec& beta, int r,
                                     const SeriesMatrix& gamma, int prec, std::optional<int> k0_beta = std::nullopt);
std::optional<int> k0_of_embedded(const TensorSetting& T, const Vec& beta);

struct SequenceLevel {
    TensorSetting setting;
    TameCorestriction s;
    Vec next;           // gamma_{i+1} as an element of E
    SeriesMatrix x;     // corrector in A(E)
    EMatrix b;          // derived element
};

struct MinApproxSequence {
    std::vector<SeriesMatrix> gammas;  // gamma_0, ..., gamma_m in g
    std::vector<SequenceLevel> levels;
    // Claimed integers per level.
    std::vector<int> n, r, e, f;
    HereditaryOrder order;  // A_0
};

struct Report {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Exact inputs.
Report verify_min_approx_sequence(const MinApproxSequence& seq, int prec = 48);

struct RefinementData {
    TensorSetting setting;
    TameCorestriction s;
    Vec beta;
    EMatrix b;
    int n = 0, r = 0;
};

struct RefinementReport : Report {
    int e = 0, f = 0;
    std::optional<int> k0;
    int predicted_e = 0, predicted_f = 0;
    std::optional<int> predicted_k0;
};

RefinementReport verify_refinement(const RefinementData& data, int prec = 48);

// Entries replaced by their known digits, as exact Laurent polynomials.
SeriesMatrix truncate_exact(const SeriesMatrix& M);
EMatrix truncate_exact(const EMatrix& b);

// The length-1 sequence gamma_0 = beta + x0 (x) b, gamma_1 = beta for a
// derived element b over E = F[beta]; the claimed integers are left empty.
MinApproxSequence length_one_sequence(const TensorSetting& T, const TameCorestriction& s, const Vec& beta,
                                      const EMatrix& b);

}  // namespace lf
