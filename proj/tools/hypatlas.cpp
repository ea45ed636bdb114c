#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hypatlas/patterns.hpp"
#include "hypatlas/poly.hpp"
#include "hypatlas/search.hpp"
#include "hypatlas/strata.hpp"
#include "hypatlas/verify.hpp"

using nlohmann::json;
using namespace hypatlas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAmbiguous = 2;
constexpr int kExitVerifyFailed = 3;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool is_decimal_token(const std::string& t) {
    return t.find('.') != std::string::npos || t.find('e') != std::string::npos || t.find('E') != std::string::npos;
}

struct ParsedCoeffs {
    std::optional<std::vector<Rat>> exact;
    std::optional<std::vector<double>> floats;
};

// High-to-low coefficient list a_{d-1},...,a_0. Fraction/integer tokens route
// to the exact pipeline, decimal tokens to the float one; mixing is rejected.
ParsedCoeffs parse_coeffs(const std::string& arg, int degree, bool force_exact) {
    const auto tokens = split(arg, ',');
    if (static_cast<int>(tokens.size()) != degree)
        throw std::invalid_argument("expected " + std::to_string(degree) + " coefficients, got " +
                                    std::to_string(tokens.size()));
    bool any_decimal = false, any_fraction = false;
    for (const auto& t : tokens) {
        if (is_decimal_token(t))
            any_decimal = true;
        else if (t.find('/') != std::string::npos)
            any_fraction = true;
    }
    if (any_decimal && any_fraction)
        throw std::invalid_argument("mixed exact (p/q) and decimal coefficients in one invocation");
    if (any_decimal && force_exact)
        throw std::invalid_argument("--exact requires integer or p/q coefficients");

    ParsedCoeffs out;
    if (any_decimal) {
        std::vector<double> v;
        for (const auto& t : tokens) {
            try {
                size_t pos = 0;
                v.push_back(std::stod(t, &pos));
                if (pos != t.size()) throw std::invalid_argument(t);
            } catch (...) {
                throw std::invalid_argument("bad coefficient '" + t + "'");
            }
        }
        out.floats = std::move(v);
    } else {
        std::vector<Rat> v;
        for (const auto& t : tokens) {
            const auto r = parse_rational(t);
            if (!r) throw std::invalid_argument("bad coefficient '" + t + "'");
            v.push_back(*r);
        }
        out.exact = std::move(v);
    }
    return out;
}

template <class T>
Monic<T> monic_from_high(const std::vector<T>& high_to_low) {
    std::vector<T> low(high_to_low.rbegin(), high_to_low.rend());
    return Monic<T>(std::move(low));
}

json label_json(const StratumLabel& lab) { return json::parse(lab.to_json()); }

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

Rat parse_rat_arg(const std::string& s, const char* what) {
    const auto r = parse_rational_or_decimal(s);
    if (!r) throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    return *r;
}

json jacobian_json(const JacobianReport& r) {
    json j;
    j["degree"] = r.degree;
    j["v"] = to_string(r.v);
    json w = json::array();
    for (const auto& c : r.w_low) w.push_back(to_string(c));
    j["w_low"] = w;
    j["rank"] = r.rank;
    j["U0"] = to_string(r.u0);
    j["U1"] = to_string(r.u1);
    j["witness"] = r.witness;
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["identity_ok"] = r.identity_ok;
    j["certified"] = r.certified;
    return j;
}

json transversality_json(const TransversalityReport& r) {
    json j;
    j["s"] = r.s;
    json params = json::array();
    for (const auto& t : r.params) params.push_back(to_string(t));
    j["params"] = params;
    j["vandermonde_det"] = to_string(r.det);
    j["independent"] = r.independent;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sign patterns, moduli orders and coefficient-space strata of low-degree real polynomials"};
    app.require_subcommand(1);

    // ---- classify ----
    auto* classify_cmd = app.add_subcommand("classify", "classify a coefficient point");
    int cl_degree = 0;
    std::string cl_coeffs;
    bool cl_exact = false;
    double cl_tol = kDefaultRootTol;
    classify_cmd->add_option("--degree", cl_degree, "polynomial degree")->required();
    classify_cmd->add_option("--coeffs", cl_coeffs, "a_{d-1},...,a_0 (monic; p/q exact or decimals)")->required();
    classify_cmd->add_flag("--exact", cl_exact, "require the exact pipeline");
    classify_cmd->add_option("--tol", cl_tol, "float-path tolerance");

    // ---- figure ----
    auto* figure_cmd = app.add_subcommand("figure", "emit curve data for the figures");
    std::string fg_curve, fg_range, fg_format = "csv", fg_out, fg_singular;
    std::string fg_a = "1", fg_b = "0";
    int fg_samples = 256;
    figure_cmd->add_option("--curve", fg_curve, "curve id (pi2-boundary, c3, e3, f3, s4, lr4, li4, h4, pcal, disc-slice, etilde-slice, even-disc-slice)")->required();
    figure_cmd->add_option("--a", fg_a, "slice value of a");
    figure_cmd->add_option("--b", fg_b, "slice value of b");
    figure_cmd->add_option("--range", fg_range, "parameter range lo:hi");
    figure_cmd->add_option("--samples", fg_samples, "number of samples (>= 2)");
    figure_cmd->add_option("--format", fg_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    figure_cmd->add_option("--out", fg_out, "output path (default stdout)");
    figure_cmd->add_option("--singular-json", fg_singular, "write singular points to this JSON sidecar");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string vf_suite;
    std::string vf_degrees = "3:8";
    int vf_trials = 100, vf_grid = 50, vf_pool = 10;
    std::uint64_t vf_seed = 1;
    verify_cmd->add_option("suite", vf_suite, "jacobian | transversality | hessian | whitney | resultant-family | all")
        ->required();
    verify_cmd->add_option("--degrees", vf_degrees, "degree range lo:hi (jacobian)");
    verify_cmd->add_option("--trials", vf_trials, "trials per case");
    verify_cmd->add_option("--grid", vf_grid, "hessian grid size");
    verify_cmd->add_option("--pool", vf_pool, "transversality parameter pool size");
    verify_cmd->add_option("--seed", vf_seed, "random seed");

    // ---- search ----
    auto* search_cmd = app.add_subcommand("search", "sample hyperbolic polynomials and build incidence tables");
    int se_degree = 3;
    long se_samples = 100000;
    std::uint64_t se_seed = 0;
    std::string se_restrict, se_law = "log", se_out;
    double se_tol = 1e-8;
    search_cmd->add_option("--degree", se_degree, "degree")->required();
    search_cmd->add_option("--samples", se_samples, "number of samples");
    search_cmd->add_option("--seed", se_seed, "random seed");
    search_cmd->add_option("--restrict", se_restrict, "restrict samples, e.g. a>0")->check(CLI::IsMember({"", "a>0"}));
    search_cmd->add_option("--law", se_law, "root law: log | uniform")->check(CLI::IsMember({"log", "uniform"}));
    search_cmd->add_option("--tol", se_tol, "open-stratum filter tolerance");
    search_cmd->add_option("--out", se_out, "directory for table/report files");

    // ---- landmarks ----
    auto* lm_cmd = app.add_subcommand("landmarks", "list the landmark points");
    std::string lm_name;
    int lm_degree = 0;
    lm_cmd->add_option("--name", lm_name, "landmark name");
    lm_cmd->add_option("--degree", lm_degree, "restrict to a degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) {
            const ParsedCoeffs pc = parse_coeffs(cl_coeffs, cl_degree, cl_exact);
            Classification cls;
            if (pc.exact)
                cls = classify(monic_from_high(*pc.exact));
            else
                cls = classify(monic_from_high(*pc.floats), cl_tol);
            if (!cls.ambiguous()) {
                std::cout << label_json(cls.primary()).dump(2) << '\n';
                return kExitOk;
            }
            json j;
            j["point"] = label_json(cls.primary());
            json cands = json::array();
            for (size_t i = 1; i < cls.labels.size(); ++i) cands.push_back(label_json(cls.labels[i]));
            j["candidates"] = cands;
            std::cout << j.dump(2) << '\n';
            return kExitAmbiguous;
        }

        if (figure_cmd->parsed()) {
            const auto id = parse_curve_name(fg_curve);
            if (!id) throw std::invalid_argument("unknown curve '" + fg_curve + "'");
            std::optional<std::pair<Rat, Rat>> range;
            if (!fg_range.empty()) {
                const auto parts = split(fg_range, ':');
                if (parts.size() != 2) throw std::invalid_argument("range must be lo:hi");
                range = std::make_pair(parse_rat_arg(parts[0], "range"), parse_rat_arg(parts[1], "range"));
            }
            const CurvePolyline curve =
                emit_curve(*id, range, fg_samples, parse_rat_arg(fg_a, "a"), parse_rat_arg(fg_b, "b"));
            write_output(fg_out, fg_format == "csv" ? curve.to_csv() : curve.to_json());
            if (!fg_singular.empty()) write_output(fg_singular, curve.singular_json());
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            json out;
            bool pass = true;
            const auto want = [&](const std::string& s) { return vf_suite == s || vf_suite == "all"; };
            if (want("jacobian")) {
                const auto parts = split(vf_degrees, ':');
                const int lo = std::stoi(parts.at(0));
                const int hi = parts.size() > 1 ? std::stoi(parts.at(1)) : lo;
                const JacobianSweepReport r = jacobian_sweep(lo, hi, vf_trials, vf_seed);
                out["jacobian"] = {{"degrees", vf_degrees},      {"trials", r.trials},
                                   {"seed", r.seed},             {"rank_failures", r.rank_failures},
                                   {"identity_failures", r.identity_failures}, {"pass", r.pass}};
                pass = pass && r.pass;
            }
            if (want("transversality")) {
                const TransversalitySweepReport r = transversality_sweep(vf_pool, vf_seed);
                out["transversality"] = {{"pool", r.pool_size},
                                         {"subsets_checked", r.subsets_checked},
                                         {"failures", r.failures},
                                         {"pass", r.pass}};
                pass = pass && r.pass;
            }
            if (want("hessian")) {
                const HessianGridReport r = hessian_grid(vf_grid);
                out["hessian"] = {{"grid", r.n}, {"rank1", r.rank1}, {"rank2", r.rank2},
                                  {"mismatches", r.mismatches}, {"pass", r.pass}};
                pass = pass && r.pass;
            }
            if (want("whitney")) {
                const WhitneyCheckReport r = whitney_identity_check(vf_trials, vf_seed);
                out["whitney"] = {{"trials", r.n_samples},
                                  {"seed", r.seed},
                                  {"max_residual", to_string(r.max_residual)},
                                  {"pass", r.pass}};
                pass = pass && r.pass;
            }
            if (want("resultant-family")) {
                const ResultantFamilyReport r = resultant_family_check(vf_trials, vf_seed);
                out["resultant_family"] = {{"trials", r.n_samples},
                                           {"seed", r.seed},
                                           {"vanishing_agree", r.vanishing_agree},
                                           {"ratio_constant", r.ratio_constant},
                                           {"ratio", r.ratio ? to_string(*r.ratio) : "n/a"},
                                           {"zero_cases", r.zero_cases},
                                           {"pass", r.pass}};
                pass = pass && r.pass;
            }
            if (out.empty()) throw std::invalid_argument("unknown verify suite '" + vf_suite + "'");
            out["pass"] = pass;
            std::cout << out.dump(2) << '\n';
            return pass ? kExitOk : kExitVerifyFailed;
        }

        if (search_cmd->parsed()) {
            SampleConfig cfg;
            cfg.degree = se_degree;
            cfg.n = se_samples;
            cfg.seed = se_seed;
            cfg.law = se_law == "uniform" ? RootLaw::Uniform : RootLaw::LogUniformModulus;
            cfg.tol = se_tol;
            cfg.restrict_a_positive = se_restrict == "a>0";
            const IncidenceTable table = build_incidence(cfg);
            const auto canonical = canonical_report(table);
            const auto rigid = rigid_report(table);
            const ExpectationCheck check = check_expectations(table);

            json j;
            j["degree"] = table.degree;
            j["n_samples"] = table.n_samples;
            j["seed"] = table.seed;
            j["restrict"] = table.restricted_a_positive ? "a>0" : "none";
            j["admitted"] = table.admitted;
            json canon = json::array();
            for (const auto& row : canonical)
                canon.push_back({{"sp", row.sp},
                                 {"observed_mos", row.mos},
                                 {"canonical_mo", row.canonical},
                                 {"canonical", row.empirically_canonical},
                                 {"samples", row.samples}});
            j["canonical_report"] = canon;
            json rig = json::array();
            for (const auto& row : rigid)
                rig.push_back(
                    {{"mo", row.mo}, {"observed_sps", row.sps}, {"rigid", row.empirically_rigid}, {"samples", row.samples}});
            j["rigid_report"] = rig;
            j["expected_lists_pass"] = check.pass;
            j["mismatches"] = check.mismatches;
            std::cout << j.dump(2) << '\n';

            if (!se_out.empty()) {
                std::filesystem::create_directories(se_out);
                write_output(se_out + "/table.json", table.to_json());
                write_output(se_out + "/table.csv", table.to_csv());
                write_output(se_out + "/report.json", j.dump(2));
            }
            return check.pass ? kExitOk : kExitVerifyFailed;
        }

        if (lm_cmd->parsed()) {
            json arr = json::array();
            for (const auto& l : all_landmarks()) {
                if (!lm_name.empty() && l.name != lm_name) continue;
                if (lm_degree > 0 && l.degree != lm_degree) continue;
                json j;
                j["name"] = l.name;
                j["degree"] = l.degree;
                json coords = json::array();
                for (const auto& c : l.coords) coords.push_back(to_string(c));
                j["coords"] = coords;
                json low = json::array();
                for (const auto& c : l.poly.low_coeffs()) low.push_back(to_string(c));
                j["poly_low_coeffs"] = low;
                j["partition"] = l.partition;
                std::vector<std::string> mem;
                if (l.in_E) mem.push_back("E");
                if (l.in_F) mem.push_back("F");
                if (l.in_G) mem.push_back("G");
                if (l.in_Delta) mem.push_back("Δ");
                j["memberships"] = mem;
                arr.push_back(j);
            }
            if (!lm_name.empty() && arr.empty()) throw std::invalid_argument("unknown landmark '" + lm_name + "'");
            std::cout << arr.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
