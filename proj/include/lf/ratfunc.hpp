#pragma once

#include <vector>

#include "lf/finite_field.hpp"
#include "lf/matrix.hpp"
#include "lf/poly.hpp"
#include "lf/series.hpp"

namespace lf {

// Polynomial in F_q[T], lowest degree first, no trailing zeros.
struct FqPoly {
    const FiniteField* F = nullptr;
    std::vector<Fq> c;

    FqPoly() = default;
    FqPoly(const FiniteField* field, std::vector<Fq> coeffs);
    static FqPoly constant(const FiniteField* F, Fq a) { return FqPoly(F, {a}); }
    static FqPoly monomial(const FiniteField* F, Fq a, int k);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Fq lead() const { return c.back(); }
    // Lowest exponent with a nonzero coefficient.
    int low_order() const;
    bool is_monomial() const;
    FqPoly derivative() const;
    bool is_pth_power() const;
    FqPoly pth_root() const;

    friend bool operator==(const FqPoly&, const FqPoly&) = default;
};

FqPoly operator+(const FqPoly& a, const FqPoly& b);
FqPoly operator-(const FqPoly& a);
FqPoly operator-(const FqPoly& a, const FqPoly& b);
FqPoly operator*(const FqPoly& a, const FqPoly& b);
void divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly gcd(FqPoly a, FqPoly b);  // monic
FqPoly make_monic(const FqPoly& a);

// Exact element of F_q(T), kept reduced with a monic denominator.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const FiniteField* F) : num_(F, {}), den_(FqPoly::constant(F, 1)) {}
    RatFunc(FqPoly num, FqPoly den);
    // Exact Laurent polynomial; throws Precondition for inexact input.
    static RatFunc from_series(const Series& s);

    const FiniteField* field() const { return den_.F; }
    const FqPoly& num() const { return num_; }
    const FqPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    // Laurent polynomial (denominator a power of T)?
    bool is_laurent() const { return den_.is_monomial(); }
    // Exact series when Laurent, otherwise the expansion to absolute precision `prec`.
    Series to_series(int prec) const;
    RatFunc derivative() const;  // d/dT
    bool is_pth_power() const { return num_.is_pth_power() && den_.is_pth_power(); }
    RatFunc pth_root() const { return RatFunc(num_.pth_root(), den_.pth_root()); }

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    FqPoly num_, den_;
};

template <>
struct ScalarTraits<RatFunc> {
    using Ctx = const FiniteField*;
    static RatFunc zero(Ctx F) { return RatFunc(F); }
    static RatFunc one(Ctx F) { return RatFunc(FqPoly::constant(F, 1), FqPoly::constant(F, 1)); }
    static RatFunc from_int(Ctx F, long n) {
        return RatFunc(FqPoly::constant(F, F->from_int(n)), FqPoly::constant(F, 1));
    }
    static Ctx ctx(const RatFunc& s) { return s.field(); }
    static bool exact_zero(const RatFunc& s) { return s.is_zero(); }
    static bool maybe_zero(const RatFunc& s) { return s.is_zero(); }
};

using RatPoly = Poly<RatFunc>;

RatPoly to_ratpoly(const SeriesPoly& f);
Matrix<RatFunc> to_ratmatrix(const SeriesMatrix& m);
// Converts back; coefficients that are not Laurent polynomials are expanded
// to absolute precision `prec`.
SeriesPoly to_seriespoly(const RatPoly& f, int prec);

// Squarefree decomposition over F_q((T)) of a monic polynomial with exact
// Laurent-polynomial coefficients: pairs (g, m) with f = prod g^m, the g
// squarefree and pairwise coprime.  Uses gcd(f, df/dx, df/dT), which is
// correct in characteristic p because F_q((T)) is separable over F_q(T).
std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f);
bool is_squarefree(const SeriesPoly& f);

}  // namespace lf
