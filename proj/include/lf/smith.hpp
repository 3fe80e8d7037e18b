#pragma once

#include <algorithm>
#include <vector>

#include "lf/matrix.hpp"

namespace lf {

// Invariant factors of tI - A over the Euclidean ring K[t], largest first
// (the first is the minimal polynomial), each monic, units dropped.
//
// With inexact scalars every decision is certified: a pivot's leading
// coefficient must be certified nonzero and a remainder that is zero only to
// precision is an undecidable branch.
template <class S>
std::vector<Poly<S>> invariant_factors(const Matrix<S>& A) {
    using P = Poly<S>;
    const int n = A.rows();
    const auto ctx = A.ctx();
    std::vector<std::vector<P>> m(n, std::vector<P>(n, P(ctx)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            P e = P::constant(ctx, -A(i, j));
            if (i == j) e += P::x(ctx);
            m[i][j] = e;
        }

    auto check = [](const P& r) {
        if (!r.is_zero() && r.maybe_zero())
            fail(ErrorKind::InsufficientPrecision, "Smith reduction: remainder indistinguishable from zero");
        if (!r.degree_certified())
            fail(ErrorKind::InsufficientPrecision, "Smith reduction: entry degree undetermined");
    };

    for (int k = 0; k < n; ++k) {
        while (true) {
            int bi = -1, bj = -1, bd = 0;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j) {
                    const P& e = m[i][j];
                    if (e.is_zero()) continue;
                    check(e);
                    if (bi < 0 || e.degree() < bd) {
                        bi = i;
                        bj = j;
                        bd = e.degree();
                    }
                }
            if (bi < 0) fail(ErrorKind::Precondition, "singular characteristic matrix");
            std::swap(m[k], m[bi]);
            for (int i = 0; i < n; ++i) std::swap(m[i][k], m[i][bj]);
            const P piv = m[k][k];
            bool clean = true;
            for (int i = k + 1; i < n; ++i) {
                if (m[i][k].is_zero()) continue;
                P q, r;
                divmod(m[i][k], piv, q, r);
                for (int j = k + 1; j < n; ++j) m[i][j] -= q * m[k][j];
                m[i][k] = r;
                check(r);
                if (!r.is_zero()) clean = false;
            }
            for (int j = k + 1; j < n; ++j) {
                if (m[k][j].is_zero()) continue;
                P q, r;
                divmod(m[k][j], piv, q, r);
                for (int i = k + 1; i < n; ++i) m[i][j] -= q * m[i][k];
                m[k][j] = r;
                check(r);
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;
            // The pivot must divide the remaining block.
            int bad = -1;
            for (int i = k + 1; i < n && bad < 0; ++i)
                for (int j = k + 1; j < n; ++j) {
                    if (m[i][j].is_zero()) continue;
                    P r = m[i][j] % piv;
                    check(r);
                    if (!r.is_zero()) {
                        bad = i;
                        break;
                    }
                }
            if (bad < 0) break;
            for (int j = k; j < n; ++j) m[k][j] += m[bad][j];
        }
    }
    std::vector<P> out;
    for (int k = 0; k < n; ++k) {
        P d = make_monic(m[k][k]);
        if (d.degree() > 0) out.push_back(d);
    }
    std::sort(out.begin(), out.end(), [](const P& a, const P& b) { return a.degree() > b.degree(); });
    return out;
}

}  // namespace lf
