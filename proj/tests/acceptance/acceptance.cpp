// One line per acceptance criterion.  `acceptance` runs all of them,
// `acceptance 3 7` only the listed ones; the exit status is nonzero when any
// selected criterion fails.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "lf/corpus.hpp"
#include "lf/error.hpp"
#include "lf/invariants.hpp"
#include "lf/mass.hpp"
#include "lf/matrix_alg.hpp"
#include "lf/strata.hpp"

using namespace lf;

namespace {

// Pinned thresholds.
constexpr int kMassPrecision = 8;
constexpr double kTameMassSeconds = 60;
constexpr int kWildPrecision = 10;
constexpr int kWildDmax = 8;
constexpr double kWildSeconds = 300;
constexpr int kWildGapLog2 = 5;  // 2 - S(8) <= 2^-5
constexpr int kCorpusSize = 60;  // per N, at least 50 required
constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr int kHomogeneityPairs = 20;
constexpr int kConjugations = 20;
constexpr int kUncachedConjugations = 2;  // per element, recomputed without the memo table
constexpr int kFiltrationSamples = 100;
constexpr int kApproxPrecision = 48;
constexpr int kClassifyPrecision = 32;

struct Result {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<CorpusEntry>& corpus(int N) {
    static std::map<int, std::vector<CorpusEntry>> cache;
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, generate_corpus(N, kCorpusSize, kCorpusSeed + N)).first;
    return it->second;
}

const EllipticInvariants& invariants_of(const CorpusEntry& c) {
    static std::map<const CorpusEntry*, EllipticInvariants> memo;
    auto it = memo.find(&c);
    if (it == memo.end()) it = memo.emplace(&c, elliptic_invariants(c.chi)).first;
    return it->second;
}

// ---- 1, 2: mass formula ------------------------------------------------------

Result tame_mass() {
    std::ostringstream os;
    bool ok = true;
    for (auto [q, n] : {std::pair{3, 2}, {5, 2}, {2, 3}, {4, 3}, {3, 4}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const MassSums m = mass_sums(FiniteField::make_q(q), n, kMassPrecision);
        const double s = seconds_since(t0);
        const bool good = m.sum_totally_ramified == n && m.weighted == 1 && s < kTameMassSeconds;
        ok = ok && good;
        os << "(" << q << "," << n << "): sum=" << m.sum_totally_ramified << " weighted=" << m.weighted << " "
           << static_cast<int>(s * 1000) << "ms; ";
    }
    return {ok, os.str()};
}

Result wild_mass() {
    const auto t0 = std::chrono::steady_clock::now();
    const MassSums m = mass_sums(FiniteField::make_q(2), 2, kWildPrecision, kWildDmax);
    const double s = seconds_since(t0);
    bool monotone = true, below = true;
    BigRational prev = 0;
    for (const auto& [D, v] : m.partial) {
        if (v < prev) monotone = false;
        if (v >= 2) below = false;
        prev = v;
    }
    const BigRational gap = 2 - m.partial.at(kWildDmax);
    const BigRational tol(1, BigInt(1) << kWildGapLog2);
    std::ostringstream os;
    os << "S(8)=" << m.partial.at(kWildDmax) << " gap=" << gap << " (tolerance " << tol << ")"
       << " nondecreasing=" << monotone << " below_2=" << below << " " << static_cast<int>(s) << "s";
    return {monotone && below && gap <= tol && s < kWildSeconds, os.str()};
}

// ---- 3, 4, 6: corpus identities --------------------------------------------

Result eta_mu() {
    std::ostringstream os;
    bool ok = true;
    for (int N : {2, 3, 4}) {
        std::map<std::string, int> mix;
        int bad = 0;
        for (const auto& c : corpus(N)) {
            const EllipticInvariants& inv = invariants_of(c);
            // eta_G = q^-a, mu = q^b: the product is 1 iff a = b.
            if (inv.eta_G_exp != inv.mu_exp || inv.eta_g_exp != inv.mu_plus_exp) ++bad;
            ++mix[to_string(c.family)];
            ++mix[inv.separable ? "separable" : "non-separable"];
            ++mix[inv.minimal ? "minimal" : "non-minimal"];
        }
        const bool mixed = mix["separable"] && mix["non-separable"] && mix["minimal"] && mix["non-minimal"] &&
                           mix["tame"] && mix["wild"];
        const bool good = bad == 0 && mixed && static_cast<int>(corpus(N).size()) >= 50;
        ok = ok && good;
        os << "N=" << N << ": " << corpus(N).size() << " elements, " << bad << " violations (";
        for (const auto& [k, v] : mix) os << k << " " << v << ", ";
        os.seekp(-2, std::ios_base::cur);
        os << "); ";
    }
    return {ok, os.str()};
}

Result conductor_consistency() {
    int checked = 0, bad = 0;
    for (int N : {2, 3, 4})
        for (const auto& c : corpus(N)) {
            const EllipticInvariants& inv = invariants_of(c);
            if (!inv.separable) continue;
            ++checked;
            if (!inv.nu_D || !inv.delta) {
                ++bad;
                continue;
            }
            const int num = *inv.nu_D - *inv.delta;
            if (num % inv.f != 0 || num / inv.f != inv.c_tilde) ++bad;
        }
    return {bad == 0 && checked > 0, std::to_string(checked) + " separable elements, " + std::to_string(bad) + " mismatches"};
}

Result minimality_triple() {
    int checked = 0, bad = 0, minimal = 0;
    for (int N : {2, 3, 4})
        for (const auto& c : corpus(N)) {
            const EllipticInvariants& inv = invariants_of(c);
            const bool by_def = minimal_by_definition(elliptic_model(c.chi, inv.precision));
            ++checked;
            minimal += by_def;
            if (by_def != (inv.k_tilde == 0) || by_def != (inv.mu_exp == 0)) ++bad;
        }
    return {bad == 0, std::to_string(checked) + " elements (" + std::to_string(minimal) + " minimal), " +
                          std::to_string(bad) + " disagreements"};
}

// ---- 5: homogeneity ----------------------------------------------------------

Result homogeneity() {
    std::mt19937_64 rng(kCorpusSeed ^ 0x5a5a);
    int bad = 0, done = 0;
    for (int N : {2, 3, 4}) {
        const auto& cs = corpus(N);
        for (int t = 0; t < kHomogeneityPairs; ++t) {
            const CorpusEntry& c = cs[static_cast<std::size_t>(t) % cs.size()];
            const FiniteField* F = c.field.get();
            Series z = random_laurent(F, -2, 2, rng);
            while (z.is_exact_zero()) z = random_laurent(F, -2, 2, rng);
            const SeriesMatrix zg = z * c.gamma;
            const EllipticInvariants& a = invariants_of(c);
            const EllipticInvariants b = elliptic_invariants(char_min_invariant(zg).charpoly);
            // |z| = q^-nu(z); eta_g(z gamma) = |z|^{N(N-1)} eta_g(gamma).
            const int shift = z.valuation() * N * (N - 1);
            if (b.eta_g_exp != a.eta_g_exp + shift || b.eta_G_exp != a.eta_G_exp) ++bad;
            ++done;
        }
    }
    return {bad == 0, std::to_string(done) + " pairs, " + std::to_string(bad) + " violations"};
}

// ---- 7: descent product formula ----------------------------------------------

struct DescentInstance {
    const char* field;
    const char* beta0;  // coordinates of beta in the basis 1, x
    const char* beta1;
    int j;
};

Vec power(const FieldModel& E, const Vec& z, int k) {
    Vec out = E.one();
    for (int i = 0; i < k; ++i) out = E.mul(out, z);
    return out;
}

Vec neg(Vec v) {
    for (auto& c : v) c = -c;
    return v;
}

Result descent() {
    // gamma = beta (x) 1 + 1 (x) b with b = pi^j [[0, -1], [1, 1 + pi]] over
    // tame quadratic E, so x0 = 1.  (With 1 in the corner b would be a square
    // root of a scalar in characteristic 3.)
    const std::vector<DescentInstance> instances = {
        {"x^2 - T", "0", "T^-1", 2},  {"x^2 - T", "0", "T^-1", 3},  {"x^2 - T", "0", "1", 3},
        {"x^2 - 2*T", "0", "T^-1", 2}, {"x^2 - T", "1", "T", 4},     {"x^2 + 1", "0", "T^-1", 2},
        {"x^2 + 1", "0", "T^-1", 3},  {"x^2 + 1", "1", "T", 2},
    };
    auto F = FiniteField::make(3);
    int bad = 0, done = 0;
    std::ostringstream os;
    for (const auto& in : instances) {
        const FieldModel E = FieldModel::from_polynomial(parse_poly(F.get(), in.field));
        const TensorSetting T{E, 2, 1};
        const ResidueBaseChange bc(E);
        const Vec beta{parse_series(F.get(), in.beta0), parse_series(F.get(), in.beta1)};
        const Vec p = power(E, E.uniformizer(), in.j);
        const Vec zero(2, Series::zero(F.get()));
        const Vec one_plus_pi = E.mul(p, Vec{Series::one(F.get()), Series::one(F.get())});
        const EMatrix b = {{zero, neg(p)}, {p, one_plus_pi}};
        const SeriesMatrix gamma = T.embed(beta) + T.block_matrix(b);

        const SeriesPoly chi = char_min_invariant(gamma).charpoly;
        const EllipticInvariants ig = elliptic_invariants(chi);
        const EllipticInvariants ib = elliptic_invariants(char_min_invariant(E.rep(beta)).key.factors.front());
        const EllipticInvariants ie = elliptic_invariants(char_min_invariant(bc.to_matrix(b)).charpoly);
        const int d = T.d, fE = E.f();
        // Exponents in base q; q_E = q^f.
        const int rhs = fE * ib.n_F * (d * d - d) + d * d * ib.mu_exp + fE * ie.mu_plus_exp;
        const bool good = ig.N == 4 && rhs == ig.mu_exp;
        bad += !good;
        ++done;
        os << ig.mu_exp << (good ? "=" : "!=") << rhs << " ";
    }
    return {bad == 0 && done >= 5, std::to_string(done) + " instances, mu_F(gamma) vs product: " + os.str()};
}

// ---- 8: approximation round trip ----------------------------------------------

struct ApproxInstance {
    const char* field;
    bool ramified;
    int j;
    std::uint64_t seed;
};

SeriesMatrix square_zero_unipotent(const FiniteField* F, int N, int i, int j, int k) {
    SeriesMatrix U = SeriesMatrix::identity(F, N);
    U(i, j) = Series::monomial(F, 1, k);
    return U;
}

bool zero_to_precision(const SeriesMatrix& M) {
    return std::none_of(M.data().begin(), M.data().end(), [](const Series& c) { return c.certified_nonzero(); });
}

Result approximation() {
    const std::vector<ApproxInstance> instances = {
        {"x^2 - T", true, 2, 1},  {"x^2 - T", true, 2, 2},  {"x^2 - T", true, 3, 3},  {"x^2 - T", true, 4, 4},
        {"x^2 - 2*T", true, 2, 5}, {"x^2 - 2*T", true, 3, 6}, {"x^2 + 1", false, 0, 7}, {"x^2 + 1", false, 1, 8},
        {"x^2 + 1", false, 2, 9},  {"x^2 + 1", false, 1, 10}, {"x^2 - T", true, 3, 11}, {"x^2 + 1", false, 0, 12},
    };
    auto F = FiniteField::make(3);
    const FiniteField* Fp = F.get();
    int bad = 0, done = 0;
    std::ostringstream notes;
    for (const auto& in : instances) {
        const FieldModel E = FieldModel::from_polynomial(parse_poly(Fp, in.field));
        const TensorSetting T{E, 2, 1};
        const TameCorestriction s = tame_corestriction(E, kApproxPrecision);
        const Vec zero(2, Series::zero(Fp));
        Vec beta;
        EMatrix b0;
        std::vector<int> n, r, e, f;
        if (in.ramified) {
            // beta = pi, b0 = pi^j [[0, -1], [1, 0]]: E[b0] is unramified over E.
            beta = E.uniformizer();
            const Vec p = power(E, E.uniformizer(), in.j);
            b0 = {{zero, neg(p)}, {p, zero}};
            n = {-1, -1}, r = {-in.j, -1}, e = {2, 2}, f = {2, 1};
        } else {
            // beta = T^-1 theta, b0 = T^j [[0, g], [1, 0]] with g = 1 + theta a
            // non-square in F_9.
            beta = {Series::zero(Fp), Series::monomial(Fp, 1, -1)};
            const Vec t{Series::monomial(Fp, 1, in.j), Series::zero(Fp)};
            const Vec g = E.mul(t, Vec{Series::one(Fp), Series::one(Fp)});
            b0 = {{zero, g}, {t, zero}};
            n = {1, 1}, r = {-in.j, 1}, e = {1, 1}, f = {4, 2};
        }
        const SeriesMatrix g0 = T.embed(beta) + T.tensor(s.x0, b0);

        // Conjugate by two square-zero unipotents deep enough to stay in the
        // coset gamma + P^{-r}.
        std::mt19937_64 rng(in.seed);
        std::uniform_int_distribution<int> pos(0, 3);
        const FiniteField* Fq = Fp;
        const SeriesMatrix I = SeriesMatrix::identity(Fq, 4);
        SeriesMatrix gamma = g0;
        const HereditaryOrder A = T.order();
        for (int t = 0; t < 2; ++t) {
            int a, b;
            do {
                a = pos(rng);
                b = pos(rng);
            } while (a == b);
            for (int k = 1;; ++k) {
                const SeriesMatrix U = square_zero_unipotent(Fq, 4, a, b, k);
                const SeriesMatrix cand = U * gamma * (I + I - U);
                if (A.contains(cand - T.embed(beta), -r[0])) {
                    gamma = cand;
                    break;
                }
            }
        }
        ++done;
        try {
            const Approximation ap = approximate_given_beta(T, s, beta, r[0], gamma, kApproxPrecision);
            const SeriesMatrix rec = ap.g * gamma * ap.g_inv - T.embed(beta) - T.tensor(s.x0, ap.b);
            MinApproxSequence seq = length_one_sequence(T, s, beta, truncate_exact(ap.b));
            seq.n = n;
            seq.r = r;
            seq.e = e;
            seq.f = f;
            const Report rep = verify_min_approx_sequence(seq, kApproxPrecision);
            const bool good = ap.g_in_group && ap.b_in_order && zero_to_precision(rec) && rep.ok();
            if (!good) {
                ++bad;
                notes << " [" << in.field << " j=" << in.j << ": "
                      << (rep.ok() ? "reconstruction" : rep.violations.front()) << "]";
            }
        } catch (const Error& err) {
            ++bad;
            notes << " [" << in.field << " j=" << in.j << ": " << err.what() << "]";
        }
    }
    return {bad == 0 && done >= 10, std::to_string(done) + " triples, " + std::to_string(bad) + " failures" + notes.str()};
}

// ---- 9: filtration criterion ---------------------------------------------------

Result filtration() {
    const auto cs = generate_corpus(2, kFiltrationSamples, kCorpusSeed ^ 0x99);
    int bad = 0, checked = 0;
    for (const auto& c : cs) {
        const EllipticInvariants inv = elliptic_invariants(c.chi);
        const int nu_E = -inv.n_F;  // nu_F(gamma) = nu_E(gamma) / e
        for (int k : {-1, 0, 1}) {
            // nu_E / e >= k + 1/N  <=>  N nu_E >= e (N k + 1)
            const bool direct = 2 * nu_E >= inv.e * (2 * k + 1);
            if (filtration_member(c.gamma, k) != direct) ++bad;
            ++checked;
        }
    }
    return {bad == 0 && static_cast<int>(cs.size()) == kFiltrationSamples,
            std::to_string(cs.size()) + " elements x 3 levels, " + std::to_string(bad) + " disagreements"};
}

// ---- 10: conjugation invariance -------------------------------------------------

bool same_invariants(const EllipticInvariants& a, const EllipticInvariants& b) {
    return a.e == b.e && a.f == b.f && a.n_F == b.n_F && a.k_F == b.k_F && a.k_tilde == b.k_tilde &&
           a.c_F == b.c_F && a.c_tilde == b.c_tilde && a.eta_G_exp == b.eta_G_exp && a.eta_g_exp == b.eta_g_exp &&
           a.mu_exp == b.mu_exp && a.mu_plus_exp == b.mu_plus_exp && a.minimal == b.minimal;
}

Result conjugation() {
    std::mt19937_64 rng(kCorpusSeed ^ 0x10);
    int conjugates = 0, bad = 0, recomputed = 0;
    InvariantCache cache;
    for (int N : {2, 3, 4})
        for (const auto& c : corpus(N)) {
            const Classification base = classify(c.gamma, kClassifyPrecision);
            const EllipticInvariants& inv = invariants_of(c);
            for (int t = 0; t < kConjugations; ++t) {
                const SeriesMatrix g = conjugate(random_unimodular(c.field.get(), N, rng), c.gamma);
                ++conjugates;
                if (!(classify(g, kClassifyPrecision) == base)) {
                    ++bad;
                    continue;
                }
                const SeriesPoly chi = char_min_invariant(g).charpoly;
                const EllipticInvariants& via_cache = cache.elliptic(chi);
                if (!same_invariants(via_cache, inv)) ++bad;
                if (t < kUncachedConjugations) {
                    ++recomputed;
                    if (!same_invariants(elliptic_invariants(chi), inv)) ++bad;
                }
            }
        }
    return {bad == 0, std::to_string(conjugates) + " conjugates (" + std::to_string(recomputed) +
                          " recomputed without memo), " + std::to_string(bad) + " differences"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
        {"mass formula, tame exactness", tame_mass},
        {"mass formula, wild convergence", wild_mass},
        {"eta * mu identities", eta_mu},
        {"separable conductor consistency", conductor_consistency},
        {"homogeneity", homogeneity},
        {"minimality triple", minimality_triple},
        {"descent product formula", descent},
        {"approximation round trip", approximation},
        {"filtration criterion", filtration},
        {"conjugation invariance", conjugation},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const Error& e) {
            r = {false, std::string("error (") + to_string(e.kind()) + "): " + e.what()};
        }
        failed += !r.pass;
        std::cout << "criterion " << id << " [" << criteria[i].first << "]: " << (r.pass ? "PASS" : "FAIL") << " - "
                  << r.detail << " (" << static_cast<int>(seconds_since(t0) * 1000) << " ms)" << std::endl;
    }
    return failed ? 1 : 0;
}
