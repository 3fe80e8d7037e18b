#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lf/corpus.hpp"
#include "lf/error.hpp"
#include "lf/invariants.hpp"
#include "lf/mass.hpp"
#include "lf/matrix_alg.hpp"
#include "lf/strata.hpp"

using json = nlohmann::ordered_json;
using namespace lf;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kVerification = 1, kInput = 2, kPrecision = 3 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::RelationViolated:
        case ErrorKind::InconsistentMinimality:
            return kVerification;
        case ErrorKind::InsufficientPrecision:
        case ErrorKind::FactorizationIncomplete:
        case ErrorKind::InseparableRootSearch:
        case ErrorKind::UnstableKernel:
        case ErrorKind::CapExceeded:
        case ErrorKind::SingularAtPrecision:
        case ErrorKind::NormalizationFailed:
        case ErrorKind::NonConvergence:
        case ErrorKind::BudgetExceeded:
            return kPrecision;
        default:
            return kInput;
    }
}

// ---- field and value I/O ----------------------------------------------------

FieldPtr make_field(int q, const std::string& modulus) {
    FieldPtr F = FiniteField::make_q(q);
    if (modulus.empty()) return F;
    std::vector<int> m;
    std::stringstream ss(modulus);
    for (std::string tok; std::getline(ss, tok, ',');) m.push_back(std::stoi(tok));
    return FiniteField::make(F->p(), m);
}

json to_json(const Series& s) { return s.to_string(); }

json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.to_string());
    return a;
}

json to_json(const SeriesMatrix& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        a.push_back(row);
    }
    return a;
}

json to_json(const EMatrix& b) {
    json a = json::array();
    for (const auto& row : b) {
        json r = json::array();
        for (const auto& z : row) r.push_back(to_json(z));
        a.push_back(r);
    }
    return a;
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string str(const BigRational& r) { return r.str(); }

// q^{-k} as an exact rational.
std::string q_power(int q, int k) {
    BigInt p = 1;
    for (int i = 0; i < std::abs(k); ++i) p *= q;
    return k >= 0 ? BigRational(1, p).str() : BigRational(p).str();
}

std::string text_of(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    fail(ErrorKind::Parse, "expected a series string, got " + j.dump());
}

SeriesMatrix matrix_from(const FiniteField* F, const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) fail(ErrorKind::Parse, "matrix must be a JSON array of arrays");
    const int n = static_cast<int>(j.size()), m = static_cast<int>(j[0].size());
    SeriesMatrix X(F, n, m);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != m) fail(ErrorKind::Parse, "ragged matrix rows");
        for (int k = 0; k < m; ++k) X(i, k) = parse_series(F, text_of(j[i][k]));
    }
    return X;
}

Vec vec_from(const FiniteField* F, const json& j) {
    if (!j.is_array()) fail(ErrorKind::Parse, "expected an array of series");
    Vec v;
    for (const auto& x : j) v.push_back(parse_series(F, text_of(x)));
    return v;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("bad JSON: ") + e.what());
    }
}

json read_input(const std::string& arg) {
    try {
        if (!arg.empty() && arg.front() == '{') return json::parse(arg);
        std::ifstream in(arg);
        if (!in) fail(ErrorKind::Parse, "cannot open input " + arg);
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("bad JSON input: ") + e.what());
    }
}

json envelope(const std::string& command) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

json classification_json(const Classification& c) {
    json j;
    j["closed"] = c.closed;
    j["pure"] = c.pure;
    j["quasi_regular"] = c.quasi_regular;
    j["quasi_regular_elliptic"] = c.quasi_regular_elliptic;
    j["separable"] = c.separable;
    j["regular"] = c.regular;
    json fs = json::array();
    for (const auto& f : c.factors)
        fs.push_back({{"factor", to_string(f.factor)}, {"multiplicity", f.multiplicity}, {"e", f.e}, {"f", f.f},
                      {"separable", f.separable}});
    j["factors"] = fs;
    return j;
}

json invariants_json(const EllipticInvariants& inv, int q) {
    json j;
    j["N"] = inv.N;
    j["e"] = inv.e;
    j["f"] = inv.f;
    j["n_F"] = inv.n_F;
    j["k_F"] = opt(inv.k_F);
    j["k_tilde"] = inv.k_tilde;
    j["c"] = inv.c_F;
    j["c_tilde"] = inv.c_tilde;
    j["minimal"] = inv.minimal;
    j["separable"] = inv.separable;
    j["nu_D"] = opt(inv.nu_D);
    j["delta"] = opt(inv.delta);
    j["sigma"] = opt(inv.sigma);
    j["eta_G_exp"] = inv.eta_G_exp;
    j["eta_g_exp"] = inv.eta_g_exp;
    j["mu_exp"] = inv.mu_exp;
    j["mu_plus_exp"] = inv.mu_plus_exp;
    j["eta_G"] = q_power(q, inv.eta_G_exp);
    j["eta_g"] = q_power(q, inv.eta_g_exp);
    j["mu"] = q_power(q, -inv.mu_exp);
    j["mu_plus"] = q_power(q, -inv.mu_plus_exp);
    j["precision"] = inv.precision;
    return j;
}

json quasi_regular_json(const QuasiRegularInvariants& inv, int q) {
    json j;
    json blocks = json::array();
    for (std::size_t i = 0; i < inv.blocks.size(); ++i) {
        json b = invariants_json(inv.blocks[i], q);
        b["polynomial"] = to_string(inv.block_polys[i]);
        blocks.push_back(b);
    }
    j["blocks"] = blocks;
    j["invertible"] = inv.invertible;
    j["eta_G_exp"] = opt(inv.eta_G_exp);
    j["eta_g_exp"] = inv.eta_g_exp;
    j["nu_D_MG"] = inv.dMG_val;
    j["nu_D_mg"] = inv.dmg_val;
    return j;
}

struct GammaInput {
    int q = 0;
    std::string modulus, poly, matrix;
};

void add_gamma_options(CLI::App* cmd, GammaInput& in) {
    cmd->add_option("--q", in.q, "residue field size")->required();
    cmd->add_option("--modulus", in.modulus, "residue field modulus, comma separated, lowest first");
    auto* p = cmd->add_option("--poly", in.poly, "characteristic polynomial (gamma = companion)");
    auto* m = cmd->add_option("--matrix", in.matrix, "matrix as a JSON array of arrays of series");
    p->excludes(m);
}

QuasiRegularInvariants invariants_of(const GammaInput& in, FieldPtr& F) {
    F = make_field(in.q, in.modulus);
    if (!in.poly.empty()) return quasi_regular_invariants_of_poly(parse_poly(F.get(), in.poly));
    if (in.matrix.empty()) fail(ErrorKind::Parse, "one of --poly or --matrix is required");
    return quasi_regular_invariants(matrix_from(F.get(), parse_json(in.matrix)));
}

json eta_mu_json(const QuasiRegularInvariants& inv, int q, bool eta) {
    json blocks = json::array();
    for (std::size_t i = 0; i < inv.blocks.size(); ++i) {
        const auto& b = inv.blocks[i];
        json x{{"polynomial", to_string(inv.block_polys[i])}};
        if (eta) {
            x["eta_G_exp"] = b.eta_G_exp;
            x["eta_g_exp"] = b.eta_g_exp;
            x["eta_G"] = q_power(q, b.eta_G_exp);
            x["eta_g"] = q_power(q, b.eta_g_exp);
        } else {
            x["mu_exp"] = b.mu_exp;
            x["mu_plus_exp"] = b.mu_plus_exp;
            x["mu"] = q_power(q, -b.mu_exp);
            x["mu_plus"] = q_power(q, -b.mu_plus_exp);
        }
        blocks.push_back(x);
    }
    return blocks;
}

std::string csv_field(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct Outcome {
    json report;
    int code = kOk;
    std::string csv;  // used instead of the JSON report when set
};

// ---- commands ---------------------------------------------------------------

Outcome run_classify(const GammaInput& in, int prec) {
    FieldPtr F = make_field(in.q, in.modulus);
    const SeriesMatrix X = !in.poly.empty() ? companion(parse_poly(F.get(), in.poly)) : matrix_from(F.get(), parse_json(in.matrix));
    Outcome o{envelope("classify")};
    o.report["q"] = in.q;
    o.report["classification"] = classification_json(classify(X, prec));
    const CharData cd = char_min_invariant(X);
    o.report["charpoly"] = to_string(cd.charpoly);
    json inv = json::array();
    for (const auto& f : cd.key.factors) inv.push_back(to_string(f));
    o.report["invariant_factors"] = inv;
    return o;
}

Outcome run_invariants(const GammaInput& in, const std::string& which) {
    FieldPtr F;
    const QuasiRegularInvariants inv = invariants_of(in, F);
    Outcome o{envelope(which)};
    o.report["q"] = in.q;
    if (which == "invariants") {
        o.report["invariants"] = quasi_regular_json(inv, in.q);
    } else {
        o.report["blocks"] = eta_mu_json(inv, in.q, which == "eta");
    }
    const auto bad = check_identities(inv);
    o.report["violations"] = bad;
    if (!bad.empty()) o.code = kVerification;
    return o;
}

Outcome run_verify(int N, int count, std::uint64_t seed, std::optional<int> q) {
    const auto corpus = generate_corpus(N, count, seed, q);
    Outcome o{envelope("verify-eta-mu")};
    o.report["N"] = N;
    o.report["count"] = count;
    o.report["seed"] = seed;
    o.report["q"] = opt(q);
    json entries = json::array();
    int failures = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& c = corpus[i];
        const QuasiRegularInvariants inv = quasi_regular_invariants(c.gamma);
        const auto bad = check_identities(inv);
        if (!bad.empty()) ++failures;
        const auto& b = inv.blocks.front();
        entries.push_back({{"index", i},
                           {"q", c.field->q()},
                           {"family", to_string(c.family)},
                           {"chi", to_string(c.chi)},
                           {"eta_G_exp", b.eta_G_exp},
                           {"mu_exp", b.mu_exp},
                           {"eta_g_exp", b.eta_g_exp},
                           {"mu_plus_exp", b.mu_plus_exp},
                           {"violations", bad}});
    }
    o.report["entries"] = entries;
    o.report["failures"] = failures;
    o.report["ok"] = failures == 0;
    if (failures) o.code = kVerification;
    return o;
}

Outcome run_mass(int q, const std::string& modulus, int n, int M, int dmax, bool csv) {
    FieldPtr F = make_field(q, modulus);
    const MassSums m = mass_sums(F, n, M, dmax);
    const auto bad = check_mass(m);
    Outcome o{envelope("mass-formula")};
    o.code = bad.empty() ? kOk : kVerification;
    if (csv) {
        o.csv = "delta,sigma,w,separable,precision_limited,member_count,member_fraction,mass_term,representative\n";
        for (const auto& c : m.classes) {
            auto num = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
            o.csv += num(c.delta) + "," + num(c.sigma) + "," + num(c.w) + "," + (c.separable ? "true" : "false") + "," +
                     (c.precision_limited ? "true" : "false") + "," + c.member_count.str() + "," +
                     c.member_fraction.str() + "," + c.mass_term.str() + "," + csv_field(to_string(c.representative)) +
                     "\n";
        }
        return o;
    }
    json& r = o.report;
    r["q"] = q;
    r["n"] = n;
    r["precision"] = M;
    r["dmax"] = m.D_max;
    r["tame"] = m.tame;
    json classes = json::array();
    for (const auto& c : m.classes)
        classes.push_back({{"representative", to_string(c.representative)},
                           {"delta", opt(c.delta)},
                           {"sigma", opt(c.sigma)},
                           {"w", opt(c.w)},
                           {"separable", c.separable},
                           {"precision_limited", c.precision_limited},
                           {"member_count", c.member_count.str()},
                           {"member_fraction", str(c.member_fraction)},
                           {"mass_term", str(c.mass_term)}});
    r["classes"] = classes;
    json partial = json::object();
    for (const auto& [D, s] : m.partial) partial[std::to_string(D)] = str(s);
    json per_e = json::object();
    for (const auto& [e, s] : m.per_e_sums) per_e[std::to_string(e)] = str(s);
    r["sums"] = {{"sum_totally_ramified", str(m.sum_totally_ramified)},
                 {"weighted", str(m.weighted)},
                 {"per_e", per_e},
                 {"grand_sum", str(m.grand_sum)},
                 {"grand_target", str(m.grand_target)},
                 {"partial", partial}};
    r["flags"] = m.flags;
    r["violations"] = bad;
    r["ok"] = bad.empty();
    return o;
}

HereditaryOrder order_from(const FiniteField* F, const json& j, int N) {
    const int period = j.value("period", 1);
    if (j.contains("levels")) return HereditaryOrder(F, period, j.at("levels").get<std::vector<int>>());
    return HereditaryOrder::standard(F, period, N);
}

Outcome run_stratum_verify(const std::string& input) {
    const json in = read_input(input);
    FieldPtr F = make_field(in.at("q").get<int>(), in.value("modulus", std::string()));
    const SeriesMatrix gamma = matrix_from(F.get(), in.at("gamma"));
    const Stratum S{order_from(F.get(), in.value("order", json::object()), gamma.rows()), in.at("n").get<int>(),
                    in.at("r").get<int>(), gamma};
    const StratumFlags fl = stratum_flags(S, in.value("precision", 48));
    Outcome o{envelope("stratum verify")};
    json& r = o.report;
    r["pure"] = fl.pure;
    r["simple"] = fl.simple;
    r["field"] = fl.field;
    r["normalizes"] = fl.normalizes;
    r["valuation"] = fl.valuation;
    r["k0"] = opt(fl.k0);
    r["notes"] = fl.notes;
    try {
        json cp = json::array();
        for (Fq c : stratum_char_poly(S)) cp.push_back(Series::constant(F.get(), c).to_string());
        r["char_poly"] = cp;
    } catch (const Error& e) {
        r["char_poly"] = nullptr;
        r["char_poly_error"] = e.what();
    }
    if (in.contains("equivalent_to")) {
        Stratum other = S;
        other.gamma = matrix_from(F.get(), in.at("equivalent_to"));
        r["equivalent"] = strata_equivalent(S, other);
    }
    // Optional expectations turn the report into a check.
    json bad = json::array();
    for (const char* key : {"pure", "simple"})
        if (in.contains("expect") && in["expect"].contains(key) && in["expect"][key].get<bool>() != r[key].get<bool>())
            bad.push_back(std::string(key) + " differs from the expected value");
    r["violations"] = bad;
    if (!bad.empty()) o.code = kVerification;
    return o;
}

Outcome run_approx(const std::string& input) {
    const json in = read_input(input);
    FieldPtr F = make_field(in.at("q").get<int>(), in.value("modulus", std::string()));
    const int prec = in.value("precision", 48);
    const FieldModel E = FieldModel::from_polynomial(parse_poly(F.get(), in.at("field").get<std::string>()));
    const TensorSetting T{E, in.at("d").get<int>(), in.value("block_period", 1)};
    const TameCorestriction s = tame_corestriction(E, prec);
    const Vec beta = vec_from(F.get(), in.at("beta"));
    const int r = in.at("r").get<int>();
    const SeriesMatrix gamma = matrix_from(F.get(), in.at("gamma"));
    const Approximation ap = approximate_given_beta(T, s, beta, r, gamma, prec);

    Outcome o{envelope("approx run")};
    json& out = o.report;
    out["x0_is_one"] = s.x0_is_one;
    out["x0"] = to_json(s.x0);
    out["g"] = to_json(ap.g);
    out["b"] = to_json(ap.b);
    out["steps"] = ap.steps;
    out["residual_valuation"] = ap.residual_valuation;
    out["gain"] = ap.gain;
    out["g_in_group"] = ap.g_in_group;
    out["b_in_order"] = ap.b_in_order;
    json bad = json::array();
    if (!ap.g_in_group) bad.push_back("g is outside the prescribed group");
    if (!ap.b_in_order) bad.push_back("b is outside Q^{-r}");
    if (in.contains("claims")) {
        const json& c = in["claims"];
        MinApproxSequence seq = length_one_sequence(T, s, beta, truncate_exact(ap.b));
        seq.n = c.at("n").get<std::vector<int>>();
        seq.r = c.at("r").get<std::vector<int>>();
        seq.e = c.at("e").get<std::vector<int>>();
        seq.f = c.at("f").get<std::vector<int>>();
        const Report rep = verify_min_approx_sequence(seq, prec);
        out["sequence_violations"] = rep.violations;
        for (const auto& v : rep.violations) bad.push_back(v);
    }
    out["violations"] = bad;
    if (!bad.empty()) o.code = kVerification;
    return o;
}

Outcome run_corpus(int N, int count, std::uint64_t seed, std::optional<int> q, bool csv) {
    const auto corpus = generate_corpus(N, count, seed, q);
    Outcome o{envelope("corpus gen")};
    if (csv) {
        o.csv = "index,q,family,defining,h,chi,gamma\n";
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto& c = corpus[i];
            o.csv += std::to_string(i) + "," + std::to_string(c.field->q()) + "," + to_string(c.family) + "," +
                     csv_field(to_string(c.defining)) + "," + csv_field(to_string(c.h)) + "," +
                     csv_field(to_string(c.chi)) + "," + csv_field(to_json(c.gamma).dump()) + "\n";
        }
        return o;
    }
    o.report["N"] = N;
    o.report["count"] = count;
    o.report["seed"] = seed;
    json entries = json::array();
    for (const auto& c : corpus)
        entries.push_back({{"q", c.field->q()},
                           {"family", to_string(c.family)},
                           {"defining", to_string(c.defining)},
                           {"h", to_string(c.h)},
                           {"chi", to_string(c.chi)},
                           {"gamma", to_json(c.gamma)}});
    o.report["entries"] = entries;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local-field invariants, strata and mass formulas over F_q((T))"};
    app.require_subcommand(1);
    std::function<Outcome()> run;

    GammaInput gin;
    int prec = 32;
    auto* classify_cmd = app.add_subcommand("classify", "classify a matrix (closed, pure, quasi-regular, ...)");
    add_gamma_options(classify_cmd, gin);
    classify_cmd->add_option("--precision", prec, "working precision");
    classify_cmd->callback([&] { run = [&] { return run_classify(gin, prec); }; });

    for (const char* name : {"invariants", "eta", "mu"}) {
        auto* cmd = app.add_subcommand(name, std::string("report ") + name + " of a quasi-regular element");
        add_gamma_options(cmd, gin);
        cmd->callback([&, name] { run = [&, name] { return run_invariants(gin, name); }; });
    }

    int N = 2, count = 50, q_opt = 0;
    std::uint64_t seed = 1;
    std::string format = "json";
    auto* verify_cmd = app.add_subcommand("verify-eta-mu", "check eta * mu = 1 on a seeded corpus");
    verify_cmd->add_option("--N", N)->check(CLI::Range(2, 6));
    verify_cmd->add_option("--count", count)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--q", q_opt, "fix the residue field (default: mixed)");
    verify_cmd->callback([&] {
        run = [&] { return run_verify(N, count, seed, q_opt ? std::optional<int>(q_opt) : std::nullopt); };
    });

    int mq = 0, mn = 2, mM = 8, dmax = -1;
    std::string mmod;
    auto* mass_cmd = app.add_subcommand("mass-formula", "Serre's mass formula from Eisenstein polynomials");
    mass_cmd->add_option("--q", mq)->required();
    mass_cmd->add_option("--n", mn)->check(CLI::Range(1, 8));
    mass_cmd->add_option("--precision", mM, "precision M of the Eisenstein catalog")->check(CLI::Range(2, 64));
    mass_cmd->add_option("--dmax", dmax, "largest discriminant exponent summed (default M-2)");
    mass_cmd->add_option("--modulus", mmod);
    mass_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    mass_cmd->callback([&] { run = [&] { return run_mass(mq, mmod, mn, mM, dmax, format == "csv"); }; });

    std::string input;
    auto* stratum_cmd = app.add_subcommand("stratum", "strata");
    stratum_cmd->require_subcommand(1);
    auto* sv = stratum_cmd->add_subcommand("verify", "pure/simple flags of a stratum given as JSON");
    sv->add_option("--input", input, "JSON file or inline object")->required();
    sv->callback([&] { run = [&] { return run_stratum_verify(input); }; });

    auto* approx_cmd = app.add_subcommand("approx", "approximation of elements by simple strata");
    approx_cmd->require_subcommand(1);
    auto* ar = approx_cmd->add_subcommand("run", "recover (g, b) with gamma = g^-1 (beta + x b) g");
    ar->add_option("--input", input, "JSON file or inline object")->required();
    ar->callback([&] { run = [&] { return run_approx(input); }; });

    auto* corpus_cmd = app.add_subcommand("corpus", "test corpora");
    corpus_cmd->require_subcommand(1);
    auto* cg = corpus_cmd->add_subcommand("gen", "seeded quasi-regular elliptic matrices");
    cg->add_option("--N", N)->check(CLI::Range(2, 6));
    cg->add_option("--count", count)->check(CLI::PositiveNumber);
    cg->add_option("--seed", seed);
    cg->add_option("--q", q_opt);
    cg->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    cg->callback([&] {
        run = [&] {
            return run_corpus(N, count, seed, q_opt ? std::optional<int>(q_opt) : std::nullopt, format == "csv");
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        const Outcome o = run();
        if (!o.csv.empty())
            std::cout << o.csv;
        else
            std::cout << o.report.dump(2) << "\n";
        return o.code;
    } catch (const Error& e) {
        json err = envelope("error");
        err["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
}
