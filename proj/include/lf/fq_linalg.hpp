#pragma once

#include <vector>

#include "lf/finite_field.hpp"

namespace lf {

using FqVec = std::vector<Fq>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> fq_rref(const FiniteField& F, std::vector<FqVec>& rows);
// Basis of {v : A v = 0} for A given by rows (each of length ncols).
std::vector<FqVec> fq_kernel(const FiniteField& F, std::vector<FqVec> rows, int ncols);
int fq_rank(const FiniteField& F, std::vector<FqVec> rows);

// A finite commutative F_q-algebra given by structure constants on a basis
// b_0..b_{n-1}: b_i b_j = sum_k table[i][j][k] b_k.
struct FqAlgebra {
    const FiniteField* F = nullptr;
    int n = 0;
    std::vector<std::vector<FqVec>> table;
    FqVec unit;

    FqVec mul(const FqVec& a, const FqVec& b) const;
    FqVec pow(FqVec a, unsigned long e) const;
    FqVec add(const FqVec& a, const FqVec& b) const;
    FqVec scale(Fq c, const FqVec& a) const;
    // Matrix (rows) of the F_q-linear map a -> a^{q^k}.
    std::vector<FqVec> frobenius_rows(int k) const;
    // Nilradical as a list of basis vectors.
    std::vector<FqVec> radical() const;
};

}  // namespace lf
