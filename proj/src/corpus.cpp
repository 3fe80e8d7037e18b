#include "lf/corpus.hpp"

#include "lf/error.hpp"
#include "lf/extension.hpp"
#include "lf/matrix_alg.hpp"

namespace lf {

const char* to_string(Family f) {
    switch (f) {
        case Family::Tame: return "tame";
        case Family::Wild: return "wild";
        case Family::Inseparable: return "inseparable";
    }
    return "?";
}

namespace {

Fq random_fq(const FiniteField* F, std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> d(nonzero ? 1 : 0, F->q() - 1);
    return static_cast<Fq>(d(rng));
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Nilpotent part of a unitriangular matrix inverted by the finite Neumann sum.
SeriesMatrix unitriangular_inverse(const SeriesMatrix& U) {
    const int n = U.rows();
    const SeriesMatrix I = SeriesMatrix::identity(U.ctx(), n);
    const SeriesMatrix Nm = U - I;
    SeriesMatrix acc = I, term = I;
    for (int k = 1; k < n; ++k) {
        term = term * Nm;
        acc = k % 2 ? acc - term : acc + term;
    }
    return acc;
}

struct Shape {
    int q;
    Family family;
};

std::vector<int> field_sizes(int N, Family f) {
    switch (f) {
        case Family::Tame:
            return N == 3 ? std::vector<int>{2, 4} : std::vector<int>{3, 5};
        case Family::Wild:
            return N == 3 ? std::vector<int>{3} : std::vector<int>{2, 4};
        case Family::Inseparable:
            return N == 3 ? std::vector<int>{3} : std::vector<int>{2};
    }
    return {};
}

SeriesPoly random_defining(const FiniteField* F, int N, Family fam, std::mt19937_64& rng) {
    std::vector<Series> c(N + 1, Series::zero(F));
    c[N] = Series::one(F);
    if (fam == Family::Inseparable) {
        const int p = F->p();
        for (int i = 0; i < N; i += p) c[i] = random_laurent(F, -1, 3, rng);
        if (c[0].is_exact_zero()) c[0] = Series::monomial(F, 1, 1);
    } else if (coin(rng, 0.5)) {
        // Eisenstein.
        for (int i = 1; i < N; ++i)
            if (coin(rng, 0.5)) c[i] = random_laurent(F, 1, 3, rng);
        c[0] = Series::monomial(F, random_fq(F, rng, true), 1);
        if (coin(rng, 0.5)) c[0] += random_laurent(F, 2, 3, rng);
    } else {
        for (int i = 0; i < N; ++i) c[i] = random_laurent(F, -1, 3, rng);
    }
    return SeriesPoly(F, std::move(c));
}

SeriesPoly random_h(const FiniteField* F, int N, std::mt19937_64& rng) {
    if (coin(rng, 0.35)) return SeriesPoly::x(F);
    for (;;) {
        std::vector<Series> c(N, Series::zero(F));
        for (int i = 0; i < N; ++i)
            if (coin(rng, 0.6)) c[i] = random_laurent(F, -1, 2, rng);
        SeriesPoly h(F, std::move(c));
        if (h.degree() >= 1) return h;
    }
}

std::optional<Family> family_of(const SeriesPoly& chi) {
    try {
        LocalFieldExt E = build_extension(chi, 32);
        if (!E.separable()) return Family::Inseparable;
        return E.e() % E.base()->p() == 0 ? Family::Wild : Family::Tame;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

Series random_laurent(const FiniteField* F, int vmin, int vmax, std::mt19937_64& rng) {
    Series s = Series::zero(F);
    std::uniform_int_distribution<int> deg(vmin, vmax);
    const int terms = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int t = 0; t < terms; ++t) s += Series::monomial(F, random_fq(F, rng, true), deg(rng));
    return s;
}

Unimodular random_unimodular(const FiniteField* F, int N, std::mt19937_64& rng) {
    SeriesMatrix L = SeriesMatrix::identity(F, N), U = SeriesMatrix::identity(F, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < i; ++j) {
            if (coin(rng, 0.6)) L(i, j) = random_laurent(F, 0, 2, rng);
            if (coin(rng, 0.6)) U(j, i) = random_laurent(F, 0, 2, rng);
        }
    SeriesMatrix D(F, N, N), Di(F, N, N);
    for (int i = 0; i < N; ++i) {
        const Fq a = random_fq(F, rng, true);
        D(i, i) = Series::constant(F, a);
        Di(i, i) = Series::constant(F, F->inv(a));
    }
    std::vector<int> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    SeriesMatrix P(F, N, N), Pt(F, N, N);
    for (int i = 0; i < N; ++i) {
        P(i, perm[i]) = Series::one(F);
        Pt(perm[i], i) = Series::one(F);
    }
    Unimodular u;
    u.g = P * L * U * D;
    u.inv = Di * unitriangular_inverse(U) * unitriangular_inverse(L) * Pt;
    return u;
}

SeriesMatrix conjugate(const Unimodular& u, const SeriesMatrix& X) { return u.g * X * u.inv; }

SeriesMatrix evaluate(const SeriesPoly& h, const SeriesMatrix& X) {
    const int n = X.rows();
    SeriesMatrix acc(X.ctx(), n, n);
    for (int i = h.degree(); i >= 0; --i) {
        acc = acc * X;
        const Series& c = h.coeff(i);
        if (c.is_exact_zero()) continue;
        for (int k = 0; k < n; ++k) acc(k, k) += c;
    }
    return acc;
}

std::vector<CorpusEntry> generate_corpus(int N, int count, std::uint64_t seed, std::optional<int> q_fixed) {
    require(N >= 2, "corpus needs N >= 2");
    std::mt19937_64 rng(seed);
    std::vector<Family> fams = {Family::Tame, Family::Wild, Family::Inseparable};
    if (q_fixed && N % FiniteField::make_q(*q_fixed)->p() != 0) fams = {Family::Tame};
    std::vector<CorpusEntry> out;
    for (int idx = 0; idx < count; ++idx) {
        const Family target = fams[idx % fams.size()];
        const std::vector<int> qs = q_fixed ? std::vector<int>{*q_fixed} : field_sizes(N, target);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 2000) fail(ErrorKind::BudgetExceeded, "corpus generation made no progress");
            const int q = qs[std::uniform_int_distribution<int>(0, static_cast<int>(qs.size()) - 1)(rng)];
            FieldPtr F = FiniteField::make_q(q);
            const SeriesPoly phi = random_defining(F.get(), N, target, rng);
            const SeriesPoly h = random_h(F.get(), N, rng);
            const SeriesMatrix g0 = evaluate(h, companion(phi));
            const SeriesPoly chi = char_min_invariant(g0).charpoly;
            if (!is_squarefree(chi)) continue;
            Classification cl;
            try {
                cl = classify(g0, 32);
            } catch (const Error&) {
                continue;
            }
            if (!cl.quasi_regular_elliptic) continue;
            if (family_of(chi) != target) continue;
            Unimodular u = random_unimodular(F.get(), N, rng);
            out.push_back({F, target, phi, h, chi, conjugate(u, g0)});
            break;
        }
    }
    return out;
}

}  // namespace lf
