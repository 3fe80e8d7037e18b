#pragma once

#include <boost/container/small_vector.hpp>
#include <string>
#include <string_view>

#include "lf/error.hpp"
#include "lf/finite_field.hpp"

namespace lf {

// Precision sentinel for values known exactly (finite Laurent polynomials).
inline constexpr int kExact = 1 << 28;

// An element of F_q((T)) known modulo O(T^prec).
//
// Three shapes occur: an exact zero; a value indistinguishable from zero at
// its precision (no certified coefficient); and a certified nonzero value whose
// first stored coefficient is the leading one.  Exact values have
// prec == kExact and carry no trailing zeros.
class Series {
public:
    using Coeffs = boost::container::small_vector<Fq, 24>;

    Series() = default;  // exact zero, field-less

    static Series zero(const FiniteField* F) { return Series(F); }
    static Series zero_at(const FiniteField* F, int prec);
    static Series constant(const FiniteField* F, Fq c, int prec = kExact) { return monomial(F, c, 0, prec); }
    static Series one(const FiniteField* F) { return constant(F, 1); }
    static Series monomial(const FiniteField* F, Fq c, int k, int prec = kExact);
    static Series from_int(const FiniteField* F, long n) { return constant(F, F->from_int(n)); }
    // Coefficients of T^v, T^{v+1}, ...; leading zeros are stripped.
    static Series from_coeffs(const FiniteField* F, int v, const Coeffs& c, int prec = kExact);

    const FiniteField* field() const { return F_; }
    bool is_exact() const { return prec_ >= kExact; }
    bool is_exact_zero() const { return coeffs_.empty() && prec_ >= kExact; }
    // No certified nonzero coefficient (exact zero or O(T^prec)).
    bool is_zero() const { return coeffs_.empty(); }
    bool certified_nonzero() const { return !coeffs_.empty(); }

    // Exact valuation; kExact for an exact zero.  Throws InsufficientPrecision
    // for a value that is zero only to its precision.
    int valuation() const;
    // A lower bound valid in every case.
    int val_bound() const { return coeffs_.empty() ? prec_ : v_; }
    int precision() const { return prec_; }
    // Number of certified coefficients past the leading one; kExact if exact.
    int rel_precision() const;
    // Highest exponent with a stored nonzero coefficient (exact values).
    int degree() const { return coeffs_.empty() ? v_ : v_ + static_cast<int>(coeffs_.size()) - 1; }

    Fq coeff(int k) const;
    Fq leading() const;
    const Coeffs& raw() const { return coeffs_; }
    int raw_start() const { return v_; }

    Series with_precision(int M) const;
    // Truncation to precision M and forgetting exactness only if needed.
    Series capped(int M) const { return prec_ > M ? with_precision(M) : *this; }
    Series shifted(int k) const;  // multiply by T^k
    // The stored coefficients as an exact Laurent polynomial.
    Series exact_part() const;
    // Exact sum of the terms with exponent < k; requires k <= precision.
    Series low_part(int k) const;
    Series scaled(Fq c) const;
    Series inverse(int rel_cap = kExact) const;
    // x -> x^p coefficientwise with T -> T^p.
    Series frobenius() const;
    // Is this a p-th power (only exponents divisible by p)?
    bool is_pth_power() const;
    Series pth_root() const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator/(const Series& a, const Series& b);

    // Identical representation (value, precision and exactness).
    friend bool operator==(const Series& a, const Series& b);
    // Agreement modulo the smaller of the two precisions.
    bool agrees_with(const Series& o) const;

    std::string to_string() const;

private:
    explicit Series(const FiniteField* F) : F_(F) {}
    void normalize();
    void trim_exact();

    const FiniteField* F_ = nullptr;
    int v_ = 0;
    int prec_ = kExact;
    Coeffs coeffs_;  // exponents v_ .. v_+size-1
};

Series parse_series(const FiniteField* F, std::string_view text);
std::string to_string(const Series& s);

}  // namespace lf
