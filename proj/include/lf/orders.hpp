#pragma once

#include <optional>
#include <vector>

#include "lf/extension.hpp"
#include "lf/lattice.hpp"

namespace lf {

// A principal hereditary order in M_N(F), in a basis adapted to its lattice
// chain.  Each basis vector has a level in [0, period); then
//   P^k = { X : nu(X_ij) >= ceil((k + level_j - level_i) / period) }.
// Matrices are flattened row-major (entry (i, j) at index i*N + j) when they
// are viewed as vectors of F^{N^2}.
class HereditaryOrder {
public:
    HereditaryOrder() = default;
    HereditaryOrder(const FiniteField* F, int period, std::vector<int> levels);

    // Block upper triangular modulo p with blocks of size N/period.
    static HereditaryOrder standard(const FiniteField* F, int period, int N);

    const FiniteField* field() const { return F_; }
    int dim() const { return static_cast<int>(levels_.size()); }
    int period() const { return e_; }
    const std::vector<int>& levels() const { return levels_; }

    int exponent(int i, int j, int k) const;
    std::vector<int> radical_exponents(int k) const;
    Lattice radical_power(int k) const;  // P^k, lattice in F^{N^2}
    Lattice order() const { return radical_power(0); }

    bool contains(const SeriesMatrix& X, int k) const;
    // Largest k with X in P^k; kExact for X = 0.
    int valuation(const SeriesMatrix& X) const;

    friend bool operator==(const HereditaryOrder&, const HereditaryOrder&) = default;

private:
    const FiniteField* F_ = nullptr;
    int e_ = 1;
    std::vector<int> levels_;
};

Vec flatten(const SeriesMatrix& X);
SeriesMatrix unflatten(const FiniteField* F, int N, const Vec& v);
// Matrix of X -> a X - X a on F^{N^2}.
SeriesMatrix ad_matrix(const SeriesMatrix& a);
// Matrix of X -> a X b.
SeriesMatrix sandwich_matrix(const SeriesMatrix& a, const SeriesMatrix& b);

// The order A(E) in End_F(E) for the basis u_{a,b} of E, with the regular
// representation E -> M_n(F).
struct ExtensionOrder {
    LocalFieldExt E;
    HereditaryOrder order;
    SeriesMatrix embed(const ExtElem& x) const { return E.regular_rep(x); }
    // Regular representations of the basis u, spanning o_E inside A(E).
    std::vector<Vec> integer_ring_gens() const;
};

ExtensionOrder order_of_extension(const LocalFieldExt& E);

// [big : small] = q^a.
int lattice_index_exponent(const Lattice& big, const Lattice& small);

// N_k(beta, A) = { X in A : beta X - X beta in P^k }.
Lattice intertwining_lattice(const SeriesMatrix& beta, const HereditaryOrder& A, int k);

struct K0Result {
    std::optional<int> k0;  // absent for -infinity (beta central)
    int scanned_from = 0;
};

// k_0(beta, A): the largest k with N_k not inside B + P, where B is A meet
// the centralizer of beta.  centralizer_gens spans B over o (or, for the
// generic overload, the centralizer is computed exactly).
K0Result k0(const SeriesMatrix& beta, const HereditaryOrder& A, const std::vector<Vec>& b_gens, int cap);
K0Result k0(const SeriesMatrix& beta, const HereditaryOrder& A, int cap);

// o-span of A cap centralizer(beta) for exact beta.
std::vector<Vec> centralizer_order_gens(const SeriesMatrix& beta, const HereditaryOrder& A);

}  // namespace lf
