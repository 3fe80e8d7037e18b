#include "lf/matrix.hpp"

#include <algorithm>

namespace lf {

std::string to_json_string(const SeriesMatrix& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += "\"" + m(i, j).to_string() + "\"";
        }
        out += "]";
    }
    return out + "]";
}

SeriesMatrix capped(const SeriesMatrix& m, int M) {
    return m.map([M](const Series& s) { return s.capped(M); });
}

bool is_exact(const SeriesMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const Series& s) { return s.is_exact(); });
}

int min_valuation(const SeriesMatrix& m) {
    int v = kExact;
    for (const auto& s : m.data()) v = std::min(v, s.val_bound());
    return v;
}

namespace {

// Reduces [A | R] to [I | A^{-1} R]; returns det A.
Series eliminate(SeriesMatrix& A, SeriesMatrix& R, int prec) {
    const int n = A.rows();
    const FiniteField* F = A.ctx();
    A = capped(A, prec);
    R = capped(R, prec);
    Series det = Series::one(F);
    for (int c = 0; c < n; ++c) {
        int sel = -1, best = kExact;
        for (int r = c; r < n; ++r)
            if (A(r, c).certified_nonzero() && A(r, c).valuation() < best) {
                best = A(r, c).valuation();
                sel = r;
            }
        if (sel < 0) fail(ErrorKind::SingularAtPrecision, "no certified pivot at this precision");
        if (sel != c) {
            for (int j = 0; j < n; ++j) std::swap(A(c, j), A(sel, j));
            for (int j = 0; j < R.cols(); ++j) std::swap(R(c, j), R(sel, j));
            det = -det;
        }
        const Series piv = A(c, c);
        det = det * piv;
        const Series inv = piv.inverse();
        for (int j = c; j < n; ++j) A(c, j) = A(c, j) * inv;
        for (int j = 0; j < R.cols(); ++j) R(c, j) = R(c, j) * inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || A(r, c).is_exact_zero()) continue;
            const Series f = A(r, c);
            for (int j = c; j < n; ++j)
                if (!A(c, j).is_exact_zero()) A(r, j) -= f * A(c, j);
            for (int j = 0; j < R.cols(); ++j)
                if (!R(c, j).is_exact_zero()) R(r, j) -= f * R(c, j);
        }
    }
    return det;
}

}  // namespace

Series det_elim(const SeriesMatrix& A, int prec) {
    SeriesMatrix a = A, r(A.ctx(), A.rows(), 0);
    return eliminate(a, r, prec);
}

std::vector<Series> solve(const SeriesMatrix& A, const std::vector<Series>& b, int prec) {
    SeriesMatrix a = A, r(A.ctx(), A.rows(), 1);
    r.set_col(0, b);
    eliminate(a, r, prec);
    return r.col(0);
}

SeriesMatrix inverse(const SeriesMatrix& A, int prec) {
    SeriesMatrix a = A, r = SeriesMatrix::identity(A.ctx(), A.rows());
    eliminate(a, r, prec);
    return r;
}

}  // namespace lf
