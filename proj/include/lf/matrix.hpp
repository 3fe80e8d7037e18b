#pragma once

#include <string>
#include <vector>

#include "lf/poly.hpp"

namespace lf {

// Dense row-major matrix over a scalar type with ScalarTraits.
template <class S>
class Matrix {
public:
    using Traits = ScalarTraits<S>;
    using Ctx = typename Traits::Ctx;

    Matrix() = default;
    Matrix(Ctx ctx, int rows, int cols) : ctx_(ctx), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Traits::zero(ctx)) {}

    static Matrix identity(Ctx ctx, int n) {
        Matrix m(ctx, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Traits::one(ctx);
        return m;
    }

    Ctx ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<S> col(int j) const {
        std::vector<S> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<S>& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }
    Matrix block(int r0, int c0, int nr, int nc) const {
        Matrix m(ctx_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(int r0, int c0, const Matrix& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Matrix transpose() const {
        Matrix m(ctx_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    template <class Fn>
    Matrix map(Fn fn) const {
        Matrix m = *this;
        for (auto& x : m.a_) x = fn(x);
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix m = a;
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] + b.a_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix m = a;
        for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] - b.a_[i];
        return m;
    }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m(a.ctx_ ? a.ctx_ : b.ctx_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const S& x = a(i, k);
                if (Traits::exact_zero(x)) continue;
                for (int j = 0; j < b.cols_; ++j) m(i, j) = m(i, j) + x * b(k, j);
            }
        return m;
    }
    friend Matrix operator*(const S& s, const Matrix& a) {
        Matrix m = a;
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    std::vector<S> apply(const std::vector<S>& v) const {
        std::vector<S> out(rows_, Traits::zero(ctx_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!Traits::exact_zero(v[j])) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    const std::vector<S>& data() const { return a_; }

private:
    Ctx ctx_{};
    int rows_ = 0, cols_ = 0;
    std::vector<S> a_;
};

// det(xI - A) by Berkowitz's division-free recursion.
template <class S>
Poly<S> berkowitz(const Matrix<S>& A) {
    using Traits = ScalarTraits<S>;
    const int n = A.rows();
    const auto ctx = A.ctx();
    if (n == 0) return Poly<S>::constant(ctx, Traits::one(ctx));
    // c holds coefficients highest degree first.
    std::vector<S> c = {Traits::one(ctx), -A(0, 0)};
    for (int r = 1; r < n; ++r) {
        // Toeplitz column: 1, -a, -R S, -R M S, ..., -R M^{r-1} S
        std::vector<S> t(r + 2, Traits::zero(ctx));
        t[0] = Traits::one(ctx);
        t[1] = -A(r, r);
        std::vector<S> v(r);
        for (int i = 0; i < r; ++i) v[i] = A(i, r);
        for (int k = 2; k <= r + 1; ++k) {
            S dot = Traits::zero(ctx);
            for (int j = 0; j < r; ++j) dot = dot + A(r, j) * v[j];
            t[k] = -dot;
            if (k == r + 1) break;
            std::vector<S> w(r, Traits::zero(ctx));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) w[i] = w[i] + A(i, j) * v[j];
            v = std::move(w);
        }
        std::vector<S> next(r + 2, Traits::zero(ctx));
        for (int i = 0; i < r + 2; ++i)
            for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j) next[i] = next[i] + t[i - j] * c[j];
        c = std::move(next);
    }
    std::vector<S> low(c.rbegin(), c.rend());
    return Poly<S>(ctx, std::move(low));
}

template <class S>
S determinant(const Matrix<S>& A) {
    Poly<S> chi = berkowitz(A);
    S c0 = chi.coeff(0);
    return A.rows() % 2 == 0 ? c0 : -c0;
}

template <class S>
S trace(const Matrix<S>& A) {
    S t = ScalarTraits<S>::zero(A.ctx());
    for (int i = 0; i < A.rows(); ++i) t = t + A(i, i);
    return t;
}

// Companion matrix of a monic polynomial: last column holds -a_0 .. -a_{n-1}.
template <class S>
Matrix<S> companion(const Poly<S>& f) {
    const int n = f.degree();
    Matrix<S> m(f.ctx(), n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = ScalarTraits<S>::one(f.ctx());
    for (int i = 0; i < n; ++i) m(i, n - 1) = -f.coeff(i);
    return m;
}

using SeriesMatrix = Matrix<Series>;

std::string to_json_string(const SeriesMatrix& m);
SeriesMatrix capped(const SeriesMatrix& m, int M);
bool is_exact(const SeriesMatrix& m);
// Smallest valuation among entries (kExact for the zero matrix).
int min_valuation(const SeriesMatrix& m);

// Gaussian elimination over F with pivots of least valuation, after capping
// every entry at absolute precision prec.  SingularAtPrecision when no
// certified pivot is left.
Series det_elim(const SeriesMatrix& A, int prec);
std::vector<Series> solve(const SeriesMatrix& A, const std::vector<Series>& b, int prec);
SeriesMatrix inverse(const SeriesMatrix& A, int prec);

}  // namespace lf
