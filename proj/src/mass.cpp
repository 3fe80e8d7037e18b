#include "lf/mass.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "lf/error.hpp"
#include "lf/invariants.hpp"
#include "lf/local_poly.hpp"

namespace lf {

namespace {

BigInt ipow(int base, long e) {
    BigInt r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

BigRational inv_pow(int q, long e) { return BigRational(1, ipow(q, e)); }

// Digits of a_i at T^1 .. T^{depth-1}.
using Digits = std::vector<std::vector<Fq>>;

SeriesPoly poly_of(const FiniteField* F, const Digits& d) {
    const int n = static_cast<int>(d.size());
    std::vector<Series> c(n + 1, Series::zero(F));
    c[n] = Series::one(F);
    for (int i = 0; i < n; ++i)
        for (std::size_t t = 0; t < d[i].size(); ++t)
            if (d[i][t] != 0) c[i] += Series::monomial(F, d[i][t], static_cast<int>(t) + 1);
    return SeriesPoly(F, std::move(c));
}

// delta = nu_E(phi'(pi)); the terms i a_i pi^{i-1} have distinct valuations
// n nu(a_i) + i - 1, so delta is read off the leading digits once the smallest
// candidate is known to beat every coefficient still zero modulo p^depth.
struct DeltaStatus {
    std::optional<int> delta;
    int lower = 0;  // bound for the undetermined candidates
};

DeltaStatus delta_status(const SeriesPoly& phi, int depth) {
    const int n = phi.degree();
    const int p = phi.ctx()->p();
    std::optional<int> known;
    int lower = kExact;
    for (int i = 1; i <= n; ++i) {
        if (i % p == 0) continue;
        const Series& a = phi.coeff(i);
        if (i == n || !a.is_exact_zero()) {
            const int v = i == n ? 0 : a.valuation();
            const int cand = n * v + i - 1;
            known = known ? std::min(*known, cand) : cand;
        } else {
            lower = std::min(lower, n * depth + i - 1);
        }
    }
    DeltaStatus s;
    s.lower = lower;
    if (known && *known < lower) s.delta = known;
    return s;
}

int radius_for(int delta, int n) { return 2 * delta / n + 1; }

struct Enumerator {
    const FieldPtr& F;
    int n, M;
    std::uint64_t limit;
    bool krasner;
    std::uint64_t visited = 0;
    std::vector<CatalogCell> out;

    void leaf(const Digits& d, int depth) {
        out.push_back({poly_of(F.get(), d), depth, ipow(F->q(), static_cast<long>(n) * (M - depth))});
    }

    void visit(Digits& d, int depth) {
        if (++visited > limit) fail(ErrorKind::BudgetExceeded, "Eisenstein enumeration exceeds the configured limit");
        if (depth == M) return leaf(d, depth);
        if (krasner) {
            const DeltaStatus st = delta_status(poly_of(F.get(), d), depth);
            if (st.delta) {
                const int r = radius_for(*st.delta, n);
                if (r <= depth || r > M) return leaf(d, depth);
            }
        }
        // Next digit of every coefficient, T^depth.
        const int q = F->q();
        std::vector<int> idx(n, 0);
        for (;;) {
            for (int i = 0; i < n; ++i) d[i].push_back(static_cast<Fq>(idx[i]));
            visit(d, depth + 1);
            for (int i = 0; i < n; ++i) d[i].pop_back();
            int i = 0;
            while (i < n && ++idx[i] == q) idx[i++] = 0;
            if (i == n) break;
        }
    }

    EisensteinCatalog run() {
        require(n >= 1, "degree must be positive");
        require(M >= 2, "precision must be at least 2");
        const int q = F->q();
        // depth 2: the T^1 digits, a_0 a unit multiple of T.
        for (int a0 = 1; a0 < q; ++a0) {
            if (n == 1) {
                Digits d{{static_cast<Fq>(a0)}};
                visit(d, 2);
                continue;
            }
            std::vector<int> idx(n - 1, 0);
            for (;;) {
                Digits d(n);
                d[0] = {static_cast<Fq>(a0)};
                for (int i = 1; i < n; ++i) d[i] = {static_cast<Fq>(idx[i - 1])};
                visit(d, 2);
                int i = 0;
                while (i < n - 1 && ++idx[i] == q) idx[i++] = 0;
                if (i == n - 1) break;
            }
        }
        return {F, n, M, std::move(out)};
    }
};

// Root separation needs e * prec above 2 nu_E(phi'(pi)) = 2 delta.
int build_precision(int delta, int n) { return (4 * delta + 4) / n + 2; }

}  // namespace

BigInt EisensteinCatalog::total() const {
    BigInt t = 0;
    for (const auto& c : entries) t += c.multiplicity;
    return t;
}

BigInt eisenstein_count(int q, int n, int M) {
    return ipow(q, static_cast<long>(M - 1) * (n - 1)) * (q - 1) * ipow(q, M - 2);
}

EisensteinCatalog enumerate_eisenstein(const FieldPtr& F, int n, int M, std::uint64_t limit) {
    if (eisenstein_count(F->q(), n, M) > limit)
        fail(ErrorKind::BudgetExceeded, "Eisenstein catalog exceeds the configured limit");
    return Enumerator{F, n, M, limit, false, 0, {}}.run();
}

EisensteinCatalog krasner_cells(const FieldPtr& F, int n, int M, std::uint64_t limit) {
    return Enumerator{F, n, M, limit, true, 0, {}}.run();
}

std::vector<ClassReport> cluster_classes(const EisensteinCatalog& catalog) {
    const FiniteField* F = catalog.field.get();
    const int n = catalog.n;
    const BigInt total = catalog.total();
    std::vector<ClassReport> resolved, limited;
    std::optional<ClassReport> insep;

    for (const auto& cell : catalog.entries) {
        const DeltaStatus st = delta_status(cell.poly, cell.depth);
        if (!st.delta) {
            if (!insep) {
                insep.emplace();
                insep->representative = cell.poly;
                insep->separable = false;
                insep->precision_limited = true;
            }
            insep->member_count += cell.multiplicity;
            continue;
        }
        const int delta = *st.delta;
        if (radius_for(delta, n) > cell.depth) {
            auto it = std::find_if(limited.begin(), limited.end(), [&](const ClassReport& c) { return *c.delta == delta; });
            if (it == limited.end()) {
                ClassReport c;
                c.representative = cell.poly;
                c.delta = delta;
                c.sigma = delta - (n - 1);
                c.precision_limited = true;
                limited.push_back(c);
                it = limited.end() - 1;
            }
            it->member_count += cell.multiplicity;
            continue;
        }
        if (n == 1) {
            if (resolved.empty()) {
                ClassReport c;
                c.representative = cell.poly;
                c.w = 1;
                c.delta = 0;
                c.sigma = 0;
                c.mass_term = 1;
                resolved.push_back(c);
            }
            resolved[0].member_count += cell.multiplicity;
            continue;
        }
        const LocalFieldExt E = LocalFieldExt::from_eisenstein(F, 1, cell.poly, true, build_precision(delta, n));
        ClassReport* match = nullptr;
        for (auto& c : resolved)
            if (*c.delta == delta && is_isomorphic(*c.extension, E)) {
                match = &c;
                break;
            }
        if (!match) {
            ClassReport c;
            c.representative = cell.poly;
            c.extension = E;
            c.delta = delta;
            c.sigma = delta - (n - 1);
            const RamificationReport rr = ramification_report(E);
            if (rr.delta != delta || discriminant_valuation(cell.poly) != delta)
                fail(ErrorKind::RelationViolated, "discriminant valuation disagrees with the different");
            if (conductor_c(elliptic_model(cell.poly, build_precision(delta, n))) != 0)
                fail(ErrorKind::RelationViolated, "Eisenstein root does not generate the maximal order");
            c.w = rr.w;
            c.mass_term = BigRational(1, *c.w) * inv_pow(F->q(), *c.sigma);
            resolved.push_back(std::move(c));
            match = &resolved.back();
        }
        match->member_count += cell.multiplicity;
    }

    std::stable_sort(resolved.begin(), resolved.end(), [](const auto& a, const auto& b) { return *a.delta < *b.delta; });
    std::sort(limited.begin(), limited.end(), [](const auto& a, const auto& b) { return *a.delta < *b.delta; });
    std::vector<ClassReport> out = std::move(resolved);
    out.insert(out.end(), limited.begin(), limited.end());
    if (insep) out.push_back(*insep);
    for (auto& c : out) c.member_fraction = BigRational(c.member_count, total);
    return out;
}

namespace {

// Sum of 1/w q^-sigma over resolved classes with delta <= D.
BigRational weighted_sum(const std::vector<ClassReport>& classes, int D) {
    BigRational s = 0;
    for (const auto& c : classes)
        if (!c.precision_limited && c.separable && *c.delta <= D) s += c.mass_term;
    return s;
}

}  // namespace

MassSums mass_sums(const FieldPtr& F, int n, int M, int D_max) {
    MassSums m;
    m.q = F->q();
    m.n = n;
    m.M = M;
    m.D_max = D_max < 0 ? M - 2 : D_max;
    m.tame = n % F->p() != 0;
    m.classes = cluster_classes(krasner_cells(F, n, M));

    for (const auto& c : m.classes) {
        if (c.precision_limited || !c.separable) {
            if (c.delta && *c.delta <= m.D_max)
                m.flags.push_back("precision-limited class at delta " + std::to_string(*c.delta));
            continue;
        }
        if (*c.delta > m.D_max) continue;
        m.sum_totally_ramified += BigRational(n, *c.w) * inv_pow(m.q, *c.sigma);
    }
    for (int D = 0; D <= m.D_max; ++D) {
        BigRational s = 0;
        for (const auto& c : m.classes)
            if (!c.precision_limited && c.separable && *c.delta <= D) s += BigRational(n, *c.w) * inv_pow(m.q, *c.sigma);
        m.partial[D] = s;
    }
    m.weighted = weighted_sum(m.classes, m.D_max);

    // Extensions with e(E/F) = e are totally ramified of degree e over the
    // unramified F' of degree f.  Each F-class gives f w(E/F')/w(E/F) classes
    // over F', so the F-sum is 1/f times the F'-sum.
    for (int e = 1; e <= n; ++e) {
        if (n % e) continue;
        const int f = n / e;
        m.grand_target += BigRational(e, n);
        BigRational s;
        if (e == n) {
            s = m.weighted;
        } else if (e == 1) {
            s = 1;
        } else {
            const FieldPtr Fu = FiniteField::make(F->p(), F->r() * f);
            const auto sub = cluster_classes(krasner_cells(Fu, e, M));
            s = weighted_sum(sub, m.D_max / f);
            for (const auto& c : sub)
                if ((c.precision_limited || !c.separable) && c.delta && f * *c.delta <= m.D_max)
                    m.flags.push_back("precision-limited class for e=" + std::to_string(e));
        }
        m.per_e_sums[e] = s / f;
        m.grand_sum += m.per_e_sums[e];
    }
    return m;
}

std::vector<std::string> check_mass(const MassSums& m) {
    std::vector<std::string> v;
    const BigRational n = m.n;
    if (m.tame) {
        if (m.sum_totally_ramified != n) v.push_back("tame sum of q^-sigma differs from n");
        if (m.weighted != 1) v.push_back("tame sum of 1/w q^-sigma differs from 1");
        if (m.grand_sum != m.grand_target) v.push_back("sum over all extensions differs from sum of e/n");
    } else if (m.sum_totally_ramified >= n) {
        v.push_back("wild partial sum reaches n");
    }
    for (auto it = m.partial.begin(); it != m.partial.end(); ++it) {
        auto next = std::next(it);
        if (next != m.partial.end() && next->second < it->second) v.push_back("partial sums decrease");
    }
    for (const auto& c : m.classes) {
        if (c.sigma && *c.sigma < 0) v.push_back("negative Swan exponent");
        if (c.member_count <= 0) v.push_back("empty class");
        // Serre's count: a class takes the share 1/w q^-sigma of all Eisenstein polynomials.
        if (!c.precision_limited && c.separable && c.member_fraction != c.mass_term)
            v.push_back("class share of Eisenstein polynomials differs from its mass term");
    }
    return v;
}

}  // namespace lf
