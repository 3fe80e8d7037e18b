#pragma once

#include <vector>

#include "lf/fq_linalg.hpp"
#include "lf/lattice.hpp"
#include "lf/poly.hpp"

namespace lf {

// The algebra A = F[x]/(chi) for a monic squarefree chi, together with its
// maximal order (Round 2) and its splitting into fields.
//
// Elements are handled in two coordinate systems: the power basis
// 1, x, ..., x^{n-1} ("power coordinates") and the Hermite basis of the
// maximal order ("order coordinates"), where integral means all entries in o.
class EtaleAlgebra {
public:
    struct Component {
        Vec idempotent;  // order coordinates, known modulo T^prec
        int degree = 0;  // n_i = [E_i : F]
        int e = 0, f = 0;
        SeriesPoly factor;  // monic irreducible factor of chi
    };

    // prec is the absolute T-adic precision for idempotents and factors.
    EtaleAlgebra(const SeriesPoly& chi, int prec);

    const FiniteField* field() const { return F_; }
    int degree() const { return n_; }
    int precision() const { return prec_; }
    const SeriesPoly& modulus() const { return chi_; }
    const Lattice& order() const { return order_; }
    const std::vector<Component>& components() const { return comps_; }

    // Power-coordinate product (reduction modulo chi).
    Vec power_mul(const Vec& a, const Vec& b) const;
    // Order-coordinate product, capped at absolute precision cap.
    Vec mul(const Vec& a, const Vec& b, int cap = kExact) const;
    Vec pow(Vec a, unsigned long e, int cap) const;
    Vec to_order(const Vec& power) const { return order_.inverse_basis().apply(power); }
    Vec to_power(const Vec& ord) const { return order_.basis().apply(ord); }
    Vec one() const { return one_; }    // order coordinates
    Vec gen() const { return gen_; }    // class of x, order coordinates
    // Matrix of multiplication by a on order coordinates.
    SeriesMatrix mult_matrix(const Vec& a) const;

    // Residue algebra O/TO and its radical (basis vectors).
    const FqAlgebra& residue() const { return res_; }
    const std::vector<FqVec>& radical() const { return rad_; }
    FqVec reduce(const Vec& integral) const;
    Vec lift(const FqVec& v) const;

    // For an exact divisor h of chi, whether h(x) vanishes on each component.
    // Certified by counting degrees against deg h.
    std::vector<bool> vanishing_components(const SeriesPoly& h) const;

private:
    void build_table();
    void maximize();
    void split();

    const FiniteField* F_ = nullptr;
    int n_ = 0, prec_ = 0;
    SeriesPoly chi_;
    Lattice order_;
    std::vector<std::vector<Vec>> table_;
    Vec one_, gen_;
    FqAlgebra res_;
    std::vector<FqVec> rad_;
    std::vector<Component> comps_;
};

// Solves sum_k c_k cols[k] = v for c, where the columns span an o-direct
// summand of o^m (independent modulo T) and v lies in their F-span.  All
// entries are first capped at absolute precision prec.
Vec solve_in_summand(const std::vector<Vec>& cols, const Vec& v, int prec);

}  // namespace lf
