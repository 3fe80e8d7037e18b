#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lf/etale.hpp"
#include "lf/lattice.hpp"

namespace lf {

class ExtElem;

// A finite extension E/F in two-step form: the unramified F' = F_{q^f}((T))
// followed by an Eisenstein polynomial phi of degree e over F'.
//
// Over F the extension has the basis u_{a,b} = g^a pi^b (a < f, b < e), with g
// the standard generator of F_{q^f}; coordinate index b*f + a.  This basis
// spans o_E, and p_E^k is diagonal in it.
class LocalFieldExt {
public:
    LocalFieldExt() = default;

    // phi: monic Eisenstein over F' (coefficients over the field F_{q^f}).
    static LocalFieldExt from_eisenstein(const FiniteField* base, int f, const SeriesPoly& phi, bool separable, int prec);

    const FiniteField* base() const;
    const FiniteField* residue() const;  // F_{q^f}
    Fq embed(Fq a) const;                // F_q -> F_{q^f}
    int e() const;
    int f() const;
    int n() const { return e() * f(); }
    int precision() const;
    bool separable() const;
    const SeriesPoly& eisenstein() const;
    const std::optional<SeriesPoly>& origin() const;

    ExtElem zero() const;
    ExtElem one() const;
    ExtElem uniformizer() const;
    ExtElem from_base(const Series& a) const;    // a in F
    ExtElem from_upper(const Series& a) const;   // a in F'
    // The class of the original generator (set by build_extension).
    std::optional<ExtElem> origin_root() const;

    // F-coordinates in the basis u_{a,b}, and back.
    Vec coords(const ExtElem& x) const;
    ExtElem from_coords(const Vec& v) const;
    // Matrix over F of multiplication by x in the basis u_{a,b}.
    SeriesMatrix regular_rep(const ExtElem& x) const;
    // pi-exponent b of basis index k.
    int level(int k) const { return k / f(); }
    // Exponents of the diagonal lattice p_E^k in the basis u.
    std::vector<int> ideal_exponents(int k) const;

    // phi with Frobenius^j applied to its coefficients.
    SeriesPoly twisted_eisenstein(int j) const;
    Series upper_from_base(const Series& a) const;

    struct Impl;
    const Impl& impl() const { return *d_; }
    explicit LocalFieldExt(std::shared_ptr<const Impl> d) : d_(std::move(d)) {}

private:
    std::shared_ptr<const Impl> d_;
};

// Element of E: polynomial of degree < e in pi over F', reduced modulo phi.
class ExtElem {
public:
    ExtElem() = default;
    ExtElem(LocalFieldExt E, std::vector<Series> c);

    const LocalFieldExt& parent() const { return E_; }
    const std::vector<Series>& coeffs() const { return c_; }

    // nu_E, normalised by nu_E(pi) = 1.
    int valuation() const;
    int val_bound() const;
    bool certified_nonzero() const;
    bool is_zero() const { return !certified_nonzero(); }

    ExtElem inverse() const;
    ExtElem pow(long k) const;

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator/(const ExtElem& a, const ExtElem& b) { return a * b.inverse(); }
    ExtElem operator-() const;

private:
    LocalFieldExt E_;
    std::vector<Series> c_;
};

// Canonical form of a field component of an etale algebra.  separable must
// be decided by the caller from exact data.
LocalFieldExt extension_of_component(const EtaleAlgebra& A, int component, bool separable);

// For monic irreducible phi over F.  NotIrreducible if F[x]/(phi) is not a field.
LocalFieldExt build_extension(const SeriesPoly& phi, int prec);

struct RamificationReport {
    int e = 0, f = 0, n = 0;
    std::optional<int> d, delta, sigma;
    bool separable = true;
    std::optional<int> w;
};

RamificationReport ramification_report(const LocalFieldExt& E);
// nu_E of the different; absent when E/F is inseparable.
std::optional<int> different_exponent(const LocalFieldExt& E);

// Roots in E of a monic polynomial with coefficients in F (upper = false) or
// in F' (upper = true).
std::vector<ExtElem> roots_in_extension(const SeriesPoly& psi, const LocalFieldExt& E, bool upper = false);
bool is_isomorphic(const LocalFieldExt& a, const LocalFieldExt& b);
// Number of F-automorphisms of E.
int automorphism_count(const LocalFieldExt& E);

}  // namespace lf
