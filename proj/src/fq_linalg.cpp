#include "lf/fq_linalg.hpp"

namespace lf {

std::vector<int> fq_rref(const FiniteField& F, std::vector<FqVec>& rows) {
    std::vector<int> piv;
    if (rows.empty()) return piv;
    const int ncols = static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        const Fq inv = F.inv(rows[r][c]);
        for (auto& x : rows[r]) x = F.mul(x, inv);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Fq f = rows[i][c];
            for (int k = 0; k < ncols; ++k) rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[r][k]));
        }
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    return piv;
}

std::vector<FqVec> fq_kernel(const FiniteField& F, std::vector<FqVec> rows, int ncols) {
    std::vector<int> piv = fq_rref(F, rows);
    std::vector<bool> is_piv(ncols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<FqVec> out;
    for (int free = 0; free < ncols; ++free) {
        if (is_piv[free]) continue;
        FqVec v(ncols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(rows[i][free]);
        out.push_back(std::move(v));
    }
    return out;
}

int fq_rank(const FiniteField& F, std::vector<FqVec> rows) { return static_cast<int>(fq_rref(F, rows).size()); }

FqVec FqAlgebra::mul(const FqVec& a, const FqVec& b) const {
    FqVec out(n, 0);
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            const Fq c = F->mul(a[i], b[j]);
            const FqVec& t = table[i][j];
            for (int k = 0; k < n; ++k)
                if (t[k] != 0) out[k] = F->add(out[k], F->mul(c, t[k]));
        }
    }
    return out;
}

FqVec FqAlgebra::pow(FqVec a, unsigned long e) const {
    FqVec r = unit;
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

FqVec FqAlgebra::add(const FqVec& a, const FqVec& b) const {
    FqVec r(n);
    for (int i = 0; i < n; ++i) r[i] = F->add(a[i], b[i]);
    return r;
}

FqVec FqAlgebra::scale(Fq c, const FqVec& a) const {
    FqVec r(n);
    for (int i = 0; i < n; ++i) r[i] = F->mul(c, a[i]);
    return r;
}

std::vector<FqVec> FqAlgebra::frobenius_rows(int k) const {
    unsigned long e = 1;
    for (int i = 0; i < k; ++i) e *= static_cast<unsigned long>(F->q());
    // Column i of the map is (b_i)^e; return as rows of the matrix.
    std::vector<FqVec> rows(n, FqVec(n, 0));
    for (int i = 0; i < n; ++i) {
        FqVec b(n, 0);
        b[i] = 1;
        FqVec img = pow(b, e);
        for (int r = 0; r < n; ++r) rows[r][i] = img[r];
    }
    return rows;
}

std::vector<FqVec> FqAlgebra::radical() const {
    int k = 0;
    long qk = 1;
    while (qk < n) {
        qk *= F->q();
        ++k;
    }
    return fq_kernel(*F, frobenius_rows(k), n);
}

}  // namespace lf
