#include "lf/invariants.hpp"

#include <algorithm>
#include <numeric>

#include "lf/local_poly.hpp"
#include "lf/matrix_alg.hpp"
#include "lf/ratfunc.hpp"

namespace lf {

namespace {

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Working precisions tried in turn before giving up.
constexpr int kPrecisionLadder[] = {24, 48, 96, 192};
// Largest number of steps the k0 scan may take past nu_A(gamma).
constexpr int kK0Cap = 96;

bool precision_failure(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::InsufficientPrecision:
        case ErrorKind::SingularAtPrecision:
        case ErrorKind::UnstableKernel:
        case ErrorKind::FactorizationIncomplete:
            return true;
        default:
            return false;
    }
}

int constant_valuation(const SeriesPoly& chi) {
    const Series& c = chi.coeff(0);
    if (c.is_exact_zero()) fail(ErrorKind::Precondition, "singular element");
    return c.valuation();
}

// Projection of gl_n onto the complement {X : X e_0 = 0} of rho(E) along
// rho(E), as an (n^2 - n) x n^2 matrix.  rho(u_i) has first column e_i.
SeriesMatrix complement_projection(const EllipticModel& m) {
    const LocalFieldExt& E = m.ord.E;
    const FiniteField* F = E.base();
    const int n = E.n();
    SeriesMatrix P(F, n * n - n, n * n);
    auto row = [n](int i, int j) { return i * (n - 1) + (j - 1); };
    for (int i = 0; i < n; ++i) {
        Vec c(n, Series::zero(F));
        c[i] = Series::one(F);
        const SeriesMatrix r = E.regular_rep(E.from_coords(c));
        for (int a = 0; a < n; ++a)
            for (int b = 1; b < n; ++b)
                if (!r(a, b).is_exact_zero()) P(row(a, b), i * n) -= r(a, b);
        for (int j = 1; j < n; ++j) P(row(i, j), i * n + j) += Series::one(F);
    }
    return P;
}

Lattice project(const SeriesMatrix& P, const Lattice& L) {
    std::vector<Vec> gens;
    for (int j = 0; j < L.dim(); ++j) gens.push_back(P.apply(L.basis().col(j)));
    return Lattice::span(L.field(), P.rows(), gens, std::max(L.conductor(), 0));
}

bool generates_residue_field(const FiniteField* R, Fq a, int q, int f) {
    if (f == 1) return true;
    for (int l = 2; l <= f; ++l) {
        if (f % l != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        std::uint64_t e = 1;
        for (int i = 0; i < f / l; ++i) e *= static_cast<std::uint64_t>(q);
        if (R->pow(a, e) == a) return false;
    }
    return true;
}

EllipticInvariants linear_invariants(const SeriesPoly& chi) {
    EllipticInvariants inv;
    const Series a = -chi.coeff(0);
    inv.N = 1;
    inv.precision = kExact;
    inv.delta = 0;
    inv.sigma = 0;
    if (a.is_exact_zero()) {
        inv.zero = true;
    } else {
        inv.n_F = -a.valuation();
    }
    return inv;
}

EllipticInvariants compute_at(const SeriesPoly& chi, int prec) {
    EllipticModel m = elliptic_model(chi, prec);
    const LocalFieldExt& E = m.ord.E;
    EllipticInvariants inv;
    inv.N = E.n();
    inv.e = E.e();
    inv.f = E.f();
    inv.separable = E.separable();
    inv.precision = prec;
    inv.n_F = -m.gamma.valuation();

    inv.c_F = conductor_c(m);
    inv.c_tilde = inv.c_F + (inv.N - 1) * inv.n_F;

    const KFResult k = kF(m);
    inv.k_F = k.k_F;
    inv.k_tilde = k.k_tilde;
    inv.minimal = k.minimal;

    if (inv.separable) {
        inv.delta = E.f() * *different_exponent(E);
        inv.sigma = *inv.delta / E.f() - (E.e() - 1);
        inv.nu_D = D_valuation(m);
    }
    inv.eta_G_exp = inv.f * (inv.c_tilde + inv.e - 1);
    inv.eta_g_exp = inv.f * (inv.c_F + inv.e - 1);

    const MuResult mr = mu(m, *inv.k_F, inv.k_tilde);
    inv.mu_exp = mr.mu_exp;
    inv.mu_plus_exp = mr.mu_plus_exp;
    return inv;
}

}  // namespace

EllipticModel elliptic_model(const SeriesPoly& chi, int prec) {
    require(chi.degree() >= 2, "elliptic model needs degree at least 2");
    LocalFieldExt E = build_extension(chi, prec);
    EllipticModel m{order_of_extension(E), *E.origin_root(), {}, prec};
    m.rho = E.regular_rep(m.gamma);
    return m;
}

int conductor_c(const EllipticModel& m) {
    const LocalFieldExt& E = m.ord.E;
    const FiniteField* F = E.base();
    const int n = E.n(), e = E.e();
    const int nF = -m.gamma.valuation();
    // Scale into o_E only when needed; c(z gamma) = c(gamma) + e(n-1)nu(z).
    const int s = nF > 0 ? ceil_div(nF, e) : 0;
    const ExtElem g = m.gamma * E.from_base(Series::monomial(F, 1, s));
    std::vector<Vec> gens;
    ExtElem p = E.one();
    for (int i = 0; i < n; ++i) {
        gens.push_back(E.coords(p));
        p = p * g;
    }
    SeriesMatrix G(F, n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) G(i, j) = gens[j][i];
    const int bound = det_elim(G, m.precision).valuation();
    const Lattice L = Lattice::span(F, n, gens, bound);
    for (int c = 0; c <= e * bound; ++c)
        if (L.contains(Lattice::diagonal(F, E.ideal_exponents(c)))) return c - e * (n - 1) * s;
    fail(ErrorKind::RelationViolated, "conductor scan passed its bound");
}

bool minimal_by_definition(const EllipticModel& m) {
    const LocalFieldExt& E = m.ord.E;
    const int v = m.gamma.valuation();
    if (std::gcd(v, E.e()) != 1) return false;
    const ExtElem u = E.from_base(Series::monomial(E.base(), 1, -v)) * m.gamma.pow(E.e());
    if (u.valuation() != 0) fail(ErrorKind::RelationViolated, "normalised power is not a unit");
    const Fq r = u.coeffs()[0].coeff(0);
    return generates_residue_field(E.residue(), r, E.base()->q(), E.f());
}

KFResult kF(const EllipticModel& m) {
    KFResult r;
    const int nF = -m.gamma.valuation();
    if (m.ord.order.valuation(m.rho) != -nF) fail(ErrorKind::RelationViolated, "A(E) valuation disagrees with nu_E");
    const K0Result k = k0(m.rho, m.ord.order, m.ord.integer_ring_gens(), kK0Cap);
    r.k_F = k.k0;
    r.k_tilde = k.k0 ? *k.k0 + nF : 0;
    r.minimal = r.k_tilde == 0;
    if (r.minimal != minimal_by_definition(m))
        fail(ErrorKind::InconsistentMinimality, "k0 scan and the definition disagree on minimality");
    return r;
}

std::optional<int> D_valuation(const EllipticModel& m) {
    const LocalFieldExt& E = m.ord.E;
    if (!E.separable()) return std::nullopt;
    const FiniteField* F = E.base();
    const int n = E.n();
    const SeriesMatrix P = complement_projection(m);
    const SeriesMatrix S = sandwich_matrix(m.rho, E.regular_rep(m.gamma.inverse()));
    // Columns: basis E_ij (j != 0) of the complement, pushed through 1 - Ad.
    SeriesMatrix J(F, n * n, n * n - n);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j) J(i * n + j, i * (n - 1) + j - 1) = Series::one(F);
    const SeriesMatrix D = P * (SeriesMatrix::identity(F, n * n) - S) * J;
    const int v = det_elim(D, m.precision).valuation();
    const SeriesPoly& chi = *E.origin();
    const int check = discriminant_valuation(chi) - (n - 1) * constant_valuation(chi);
    if (v != check) fail(ErrorKind::RelationViolated, "D_F disagrees with the discriminant");
    return v;
}

MuResult mu(const EllipticModel& m, int k_F, int k_tilde) {
    const HereditaryOrder& A = m.ord.order;
    const FiniteField* F = A.field();
    const int N = A.dim();
    const int nF = -m.gamma.valuation();
    MuResult r;
    const Lattice Nk = intertwining_lattice(m.rho, A, k_F);
    const Lattice Pk = A.radical_power(k_tilde);
    std::vector<Vec> gens = m.ord.integer_ring_gens();
    for (int j = 0; j < Pk.dim(); ++j) gens.push_back(Pk.basis().col(j));
    const Lattice OP = Lattice::span(F, Pk.dim(), gens, std::max(Pk.conductor(), 0));
    r.mu_exp = lattice_index_exponent(Nk, OP);

    const SeriesMatrix P = complement_projection(m);
    r.mu_plus_exp = project(P, A.radical_power(k_F)).det_valuation() - project(P, Nk).det_valuation();
    if (r.mu_plus_exp != m.ord.E.f() * nF * (1 - N) + r.mu_exp)
        fail(ErrorKind::RelationViolated, "mu+ and mu are not related by |det|^{1-N}");
    return r;
}

EllipticInvariants elliptic_invariants(const SeriesPoly& chi) {
    require(is_exact(chi), "characteristic polynomial must be exact");
    if (chi.degree() == 1) return linear_invariants(chi);
    std::optional<Error> last;
    for (int prec : kPrecisionLadder) {
        try {
            return compute_at(chi, prec);
        } catch (const Error& e) {
            if (!precision_failure(e)) throw;
            last = e;
        }
    }
    throw *last;
}

const EllipticInvariants& InvariantCache::elliptic(const SeriesPoly& chi) {
    const std::string key = to_string(chi);
    auto it = table_.find(key);
    if (it == table_.end()) it = table_.emplace(key, elliptic_invariants(chi)).first;
    return it->second;
}

namespace {

// det of X -> X - a X b^{-1}, or of X -> a X - X b when additive, on
// rectangular blocks X of size rows(a) x rows(b).
int block_det_valuation(const SeriesMatrix& a, const SeriesMatrix& b, bool additive, int prec) {
    const FiniteField* F = a.ctx();
    const int r = a.rows(), c = b.rows();
    SeriesMatrix M(F, r * c, r * c);
    if (additive) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                for (int l = 0; l < r; ++l)
                    if (!a(i, l).is_exact_zero()) M(i * c + j, l * c + j) += a(i, l);
                for (int m = 0; m < c; ++m)
                    if (!b(m, j).is_exact_zero()) M(i * c + j, i * c + m) -= b(m, j);
            }
    } else {
        const SeriesMatrix bi = inverse(b, prec);
        for (int i = 0; i < r * c; ++i) M(i, i) = Series::one(F);
        for (int i = 0; i < r; ++i)
            for (int l = 0; l < r; ++l) {
                if (a(i, l).is_exact_zero()) continue;
                for (int m = 0; m < c; ++m)
                    for (int j = 0; j < c; ++j)
                        if (!bi(m, j).is_exact_zero()) M(i * c + j, l * c + m) -= a(i, l) * bi(m, j);
            }
    }
    return det_elim(M, prec).valuation();
}

SeriesMatrix block_rep(const SeriesPoly& g, int prec) {
    if (g.degree() > 1) return elliptic_model(g, prec).rho;
    SeriesMatrix a(g.ctx(), 1, 1);
    a(0, 0) = -g.coeff(0);
    return a;
}

EllipticInvariants block_invariants(const SeriesPoly& g, int prec, InvariantCache* cache) {
    if (is_exact(g)) return cache ? cache->elliptic(g) : elliptic_invariants(g);
    return g.degree() == 1 ? linear_invariants(g) : compute_at(g, prec);
}

QuasiRegularInvariants quasi_regular_at(const SeriesPoly& chi, int prec, InvariantCache* cache) {
    QuasiRegularInvariants out;
    // An exact factor x is split off first: approximate factoring would only
    // give a constant term O(T^prec).
    std::vector<LocalFactor> fac;
    SeriesPoly rest = chi;
    if (chi.coeff(0).is_exact_zero()) {
        const FiniteField* F = chi.ctx();
        std::vector<Series> c(chi.coeffs().begin() + 1, chi.coeffs().end());
        rest = SeriesPoly(F, std::move(c));
        fac.push_back({SeriesPoly(F, {Series::zero(F), Series::one(F)})});
        if (rest.coeff(0).is_exact_zero()) fail(ErrorKind::Precondition, "element is not quasi-regular");
    }
    if (rest.degree() >= 1)
        for (auto& f : factor_local(rest, prec)) fac.push_back(std::move(f));
    for (const auto& f : fac)
        if (f.multiplicity != 1) fail(ErrorKind::Precondition, "element is not quasi-regular");
    if (fac.size() == 1) {
        if (fac[0].multiplicity != 1) fail(ErrorKind::Precondition, "element is not quasi-regular");
        out.block_polys = {chi};
        out.blocks = {block_invariants(chi, prec, cache)};
        out.invertible = !out.blocks[0].zero;
    } else {
        for (const auto& f : fac) {
            out.block_polys.push_back(f.factor);
            out.blocks.push_back(block_invariants(f.factor, prec, cache));
        }
        out.invertible = std::none_of(out.blocks.begin(), out.blocks.end(), [](const auto& b) { return b.zero; });
        const int r = static_cast<int>(out.blocks.size());
        std::vector<SeriesMatrix> reps;
        for (const auto& g : out.block_polys) reps.push_back(block_rep(g, prec));
        int dmg = 0, dMG = 0, dmg_res = 0, dMG_res = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;
                dmg += block_det_valuation(reps[i], reps[j], true, prec);
                if (out.invertible) dMG += block_det_valuation(reps[i], reps[j], false, prec);
                // Cross-check through resultants.
                const SeriesPoly& gi = out.block_polys[i];
                const SeriesPoly& gj = out.block_polys[j];
                const int res = det_elim(multiplication_matrix(gj, gi), prec).valuation();
                dmg_res += res;
                if (out.invertible) dMG_res += res - gi.degree() * constant_valuation(gj);
            }
        if (dmg != dmg_res || dMG != dMG_res)
            fail(ErrorKind::RelationViolated, "off-diagonal determinant disagrees with resultants");
        out.dmg_val = dmg;
        out.dMG_val = dMG;
    }
    out.eta_g_exp = out.dmg_val;
    int etaG = out.dMG_val;
    for (const auto& b : out.blocks) {
        out.eta_g_exp += b.eta_g_exp;
        etaG += b.eta_G_exp;
    }
    if (out.invertible) out.eta_G_exp = etaG;
    return out;
}

}  // namespace

QuasiRegularInvariants quasi_regular_invariants_of_poly(const SeriesPoly& chi, InvariantCache* cache) {
    require(is_exact(chi), "characteristic polynomial must be exact");
    std::optional<Error> last;
    for (int prec : kPrecisionLadder) {
        try {
            return quasi_regular_at(chi, prec, cache);
        } catch (const Error& e) {
            if (!precision_failure(e)) throw;
            last = e;
        }
    }
    throw *last;
}

QuasiRegularInvariants quasi_regular_invariants(const SeriesMatrix& gamma, InvariantCache* cache) {
    require(is_exact(gamma), "matrix must be exact");
    const CharData cd = char_min_invariant(gamma);
    return quasi_regular_invariants_of_poly(cd.charpoly, cache);
}

int descent_lambda(const SeriesPoly& beta_chi, int d) {
    require(beta_chi.degree() >= 2, "descent needs E different from F");
    require(d >= 1, "d must be positive");
    const EllipticInvariants inv = elliptic_invariants(beta_chi);
    return d * d * (inv.f * inv.n_F + inv.mu_exp);
}

std::vector<std::string> check_identities(const EllipticInvariants& inv) {
    std::vector<std::string> bad;
    if (inv.N == 1) {
        if (inv.mu_exp != 0 || inv.eta_G_exp != 0 || inv.eta_g_exp != 0) bad.push_back("N = 1 constants are not 1");
        return bad;
    }
    if (inv.k_tilde < 0) bad.push_back("k_tilde negative");
    if (inv.eta_G_exp + (-inv.mu_exp) != 0) bad.push_back("eta_G * mu != 1");
    if (inv.eta_g_exp + (-inv.mu_plus_exp) != 0) bad.push_back("eta_g * mu+ != 1");
    if ((inv.k_tilde == 0) != (inv.mu_exp == 0)) bad.push_back("minimality and mu = 1 disagree");
    if (inv.minimal != (inv.k_tilde == 0)) bad.push_back("minimal flag and k_tilde disagree");
    if (inv.c_tilde < -(inv.N - 1) * (inv.e - 1)) bad.push_back("c_tilde below its lower bound");
    if (inv.eta_g_exp - inv.eta_G_exp != -inv.f * inv.n_F * (inv.N - 1)) bad.push_back("eta_g != |det|^{N-1} eta_G");
    if (inv.separable && inv.nu_D && inv.delta) {
        const int num = *inv.nu_D - *inv.delta;
        if (num % inv.f != 0 || num / inv.f != inv.c_tilde) bad.push_back("c_tilde != (nu(D) - delta)/f");
    }
    return bad;
}

std::vector<std::string> check_identities(const QuasiRegularInvariants& inv) {
    std::vector<std::string> bad;
    for (const auto& b : inv.blocks)
        for (auto& m : check_identities(b)) bad.push_back(m);
    return bad;
}

}  // namespace lf
