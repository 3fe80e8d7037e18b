#pragma once

#include <vector>

#include "lf/matrix.hpp"

namespace lf {

using Vec = std::vector<Series>;

// A full-rank o-lattice in F^m, held as its canonical column Hermite basis:
// lower triangular, pivot of column r equal to T^{v_r} exactly, entries below
// a pivot reduced modulo the pivot of their row.  The basis is exact.
//
// Every constructor is told a bound s with T^s o^m contained in the lattice;
// the reduction then runs modulo T^s, where it is exact.
class Lattice {
public:
    Lattice() = default;

    static Lattice standard(const FiniteField* F, int m) { return diagonal(F, std::vector<int>(m, 0)); }
    static Lattice diagonal(const FiniteField* F, const std::vector<int>& exps);
    // Span of the columns together with T^s o^m.  Generator entries must be
    // known modulo T^s.
    static Lattice span(const FiniteField* F, int m, const std::vector<Vec>& gens, int s);
    static Lattice span(const SeriesMatrix& gens, int s);

    const FiniteField* field() const { return F_; }
    int dim() const { return m_; }
    const SeriesMatrix& basis() const { return B_; }
    const SeriesMatrix& inverse_basis() const { return Binv_; }
    const std::vector<int>& pivots() const { return piv_; }
    int det_valuation() const;
    // Least c with T^c o^m contained in the lattice.
    int conductor() const { return cond_; }
    // Least c with the lattice contained in T^c o^m.
    int floor_exponent() const { return floor_; }

    Vec coordinates(const Vec& v) const;
    bool contains(const Vec& v) const;
    bool contains(const Lattice& o) const;
    Lattice scaled(int k) const;  // T^k L

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.B_ == b.B_; }

private:
    void finish();

    const FiniteField* F_ = nullptr;
    int m_ = 0;
    SeriesMatrix B_, Binv_;
    std::vector<int> piv_;
    int cond_ = 0, floor_ = 0;
};

Lattice operator+(const Lattice& a, const Lattice& b);
Lattice intersect(const Lattice& a, const Lattice& b);
// {x in dom : phi(x) in tgt} for a linear map phi: F^a -> F^b (b x a matrix).
// phi must be known modulo the precision this needs; InsufficientPrecision
// otherwise.
Lattice preimage(const SeriesMatrix& phi, const Lattice& dom, const Lattice& tgt);
// Image of a lattice under an injective linear map F^a -> F^a.
Lattice image(const SeriesMatrix& phi, const Lattice& L);
// Exponent a with [big : small] = q^a.  Throws NotSublattice.
int index_exponent(const Lattice& big, const Lattice& small);
// Direct sum of copies of L.
Lattice direct_sum(const std::vector<Lattice>& parts);

}  // namespace lf
