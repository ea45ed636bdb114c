#include "hypatlas/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include "hypatlas/rng.hpp"

namespace hypatlas {

using nlohmann::json;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HYPATLAS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::vector<double> sample_roots(int degree, std::uint64_t seed, long index, RootLaw law, double radius) {
    SplitMix64 rng = stream_rng(seed, static_cast<std::uint64_t>(index));
    std::vector<double> roots(static_cast<size_t>(degree));
    for (auto& r : roots) {
        switch (law) {
            case RootLaw::Uniform:
                r = rng.uniform(-radius, radius);
                break;
            case RootLaw::LogUniformModulus: {
                const double mod = std::pow(10.0, rng.uniform(-3.0, 3.0));
                r = rng.coin() ? mod : -mod;
                break;
            }
        }
    }
    return roots;
}

MonicD sample_hyperbolic(int degree, std::uint64_t seed, long index, RootLaw law, double radius) {
    return MonicD{expand_roots_low(sample_roots(degree, seed, index, law, radius))};
}

namespace {

// Open-stratum sample: SP string and MO string, or nullopt when filtered out.
std::optional<std::pair<std::string, std::string>> sample_cell(int degree, std::uint64_t seed, long index,
                                                               const SampleConfig& cfg) {
    const std::vector<double> roots = sample_roots(degree, seed, index, cfg.law, cfg.uniform_radius);
    // moduli separation filter
    std::vector<double> mods;
    for (double r : roots) mods.push_back(std::fabs(r));
    std::sort(mods.begin(), mods.end());
    for (size_t i = 0; i + 1 < mods.size(); ++i)
        if (mods[i + 1] - mods[i] <= cfg.tol * (1.0 + mods[i])) return std::nullopt;
    if (!mods.empty() && mods[0] <= cfg.tol) return std::nullopt;

    const std::vector<double> low = expand_roots_low(roots);
    double scale = 1.0;
    for (double a : low) scale = std::max(scale, std::fabs(a));
    for (double a : low)
        if (std::fabs(a) < 1e-12 * scale) return std::nullopt;  // too close to a coefficient hyperplane

    const MonicD p{std::vector<double>(low)};
    const SignPattern sp = sign_pattern(p);

    // moduli order straight from the sampled roots
    std::vector<std::pair<double, double>> by_mod;  // (|r|, r)
    for (double r : roots) by_mod.emplace_back(std::fabs(r), r);
    std::sort(by_mod.begin(), by_mod.end());
    ModuliOrder mo;
    for (size_t i = 0; i < by_mod.size(); ++i) {
        if (i) mo.equal_to_prev.push_back(false);
        mo.letters.push_back(by_mod[i].second > 0 ? MoLetter::P : MoLetter::N);
    }
    return std::make_pair(sp.str(), mo.str());
}

template <class Fn>
void parallel_over_indices(long n, int threads, Fn&& fn) {
    // fn(worker, index); per-index work derives its own rng stream
    const int t = std::max(1, threads);
    if (t == 1) {
        for (long i = 0; i < n; ++i) fn(0, i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        const long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            for (long i = lo; i < hi; ++i) fn(w, i);
        });
    }
    for (auto& th : pool) th.join();
}

bool sp_has_positive_a(const std::string& sp) {
    const auto pattern = SignPattern::parse(sp);
    return pattern && pattern->signs.size() > 1 && pattern->signs[1] > 0;
}

}  // namespace

IncidenceTable build_incidence(const SampleConfig& cfg) {
    IncidenceTable table;
    table.degree = cfg.degree;
    table.n_samples = cfg.n;
    table.seed = cfg.seed;
    table.restricted_a_positive = cfg.restrict_a_positive;

    const int threads = resolve_threads(cfg.threads);
    std::vector<std::map<std::string, std::map<std::string, long>>> partial(static_cast<size_t>(threads));
    std::vector<long> admitted(static_cast<size_t>(threads), 0);

    parallel_over_indices(cfg.n, threads, [&](int worker, long i) {
        const auto cell = sample_cell(cfg.degree, cfg.seed, i, cfg);
        if (!cell) return;
        ++admitted[static_cast<size_t>(worker)];
        ++partial[static_cast<size_t>(worker)][cell->first][cell->second];
    });

    for (int w = 0; w < threads; ++w) {
        table.admitted += admitted[static_cast<size_t>(w)];
        for (const auto& [sp, mos] : partial[static_cast<size_t>(w)])
            for (const auto& [mo, count] : mos) {
                table.sp_to_mos[sp][mo] += count;
                table.mo_to_sps[mo][sp] += count;
            }
    }
    return table;
}

std::vector<CanonicalRow> canonical_report(const IncidenceTable& table) {
    if (table.sp_to_mos.empty()) throw std::invalid_argument("canonical_report: empty incidence table");
    std::vector<CanonicalRow> rows;
    for (const auto& [sp, mos] : table.sp_to_mos) {
        if (table.restricted_a_positive && !sp_has_positive_a(sp)) continue;
        CanonicalRow row;
        row.sp = sp;
        for (const auto& [mo, count] : mos) {
            row.mos.push_back(mo);
            row.samples += count;
        }
        const auto pattern = SignPattern::parse(sp);
        row.canonical = canonical_mo(*pattern).str();
        row.empirically_canonical = row.mos.size() == 1 && row.mos.front() == row.canonical;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RigidRow> rigid_report(const IncidenceTable& table) {
    if (table.mo_to_sps.empty()) throw std::invalid_argument("rigid_report: empty incidence table");
    std::vector<RigidRow> rows;
    for (const auto& [mo, sps] : table.mo_to_sps) {
        if (table.restricted_a_positive) {
            bool all_positive_a = true;
            for (const auto& [sp, count] : sps)
                if (!sp_has_positive_a(sp)) all_positive_a = false;
            if (!all_positive_a) continue;
        }
        RigidRow row;
        row.mo = mo;
        for (const auto& [sp, count] : sps) {
            row.sps.push_back(sp);
            row.samples += count;
        }
        row.empirically_rigid = row.sps.size() == 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<ExpectedLists> expected_lists(int degree, bool restrict_a_positive) {
    ExpectedLists e;
    if (degree == 2) {
        e.canonical_sps = {"(+,+,+)", "(+,+,-)", "(+,-,+)", "(+,-,-)"};
        e.rigid_mos = {"N<N", "P<N", "P<P", "N<P"};
        return e;
    }
    if (degree == 3) {
        e.canonical_sps = {"(+,+,+,+)", "(+,+,-,+)", "(+,+,+,-)", "(+,-,+,-)", "(+,-,-,-)", "(+,-,+,+)"};
        e.non_canonical_sps = {"(+,+,-,-)", "(+,-,-,+)"};
        e.rigid_mos = {"N<N<N", "N<P<N", "P<N<P", "P<P<P"};
        return e;
    }
    if (degree == 4 && restrict_a_positive) {
        e.canonical_sps = {"(+,+,+,+,+)", "(+,+,+,+,-)", "(+,+,-,+,+)", "(+,+,+,-,+)", "(+,+,-,+,-)"};
        e.non_canonical_sps = {"(+,+,+,-,-)", "(+,+,-,-,-)", "(+,+,-,-,+)"};
        e.rigid_mos = {"P<N<P<N", "N<N<N<N"};
        return e;
    }
    if (degree == 4) {
        // a<0 mirror images join the restricted rigid list; canonicity is
        // asserted only where the restricted table pins it down.
        e.rigid_mos = {"P<N<P<N", "N<N<N<N", "N<P<N<P", "P<P<P<P"};
        return e;
    }
    return std::nullopt;
}

ExpectationCheck check_expectations(const IncidenceTable& table) {
    ExpectationCheck out;
    const auto expected = expected_lists(table.degree, table.restricted_a_positive);
    if (!expected) {
        out.pass = true;
        return out;
    }
    out.pass = true;
    auto fail = [&](std::string msg) {
        out.pass = false;
        out.mismatches.push_back(std::move(msg));
    };

    std::set<std::string> observed_canonical, observed_non_canonical;
    for (const auto& row : canonical_report(table))
        (row.empirically_canonical ? observed_canonical : observed_non_canonical).insert(row.sp);
    for (const auto& sp : expected->canonical_sps)
        if (!observed_canonical.count(sp)) fail("expected canonical SP not confirmed: " + sp);
    for (const auto& sp : expected->non_canonical_sps)
        if (!observed_non_canonical.count(sp)) fail("expected non-canonical SP not confirmed: " + sp);
    if (!expected->canonical_sps.empty() && !expected->non_canonical_sps.empty()) {
        // the expected lists partition the realizable patterns: nothing else may appear
        for (const auto& sp : observed_canonical)
            if (!expected->canonical_sps.count(sp)) fail("unexpected canonical SP observed: " + sp);
    }

    std::set<std::string> observed_rigid;
    for (const auto& row : rigid_report(table))
        if (row.empirically_rigid) observed_rigid.insert(row.mo);
    if (observed_rigid != expected->rigid_mos) {
        std::string msg = "rigid MO set mismatch: observed {";
        for (const auto& mo : observed_rigid) msg += mo + " ";
        msg += "} expected {";
        for (const auto& mo : expected->rigid_mos) msg += mo + " ";
        msg += "}";
        fail(std::move(msg));
    }
    return out;
}

DescartesSweepReport descartes_sweep(int degree, long n, std::uint64_t seed, int threads) {
    DescartesSweepReport rep;
    rep.degree = degree;
    rep.n = n;
    rep.seed = seed;

    const int t = resolve_threads(threads);
    std::vector<long> admitted(static_cast<size_t>(t), 0), violations(static_cast<size_t>(t), 0);
    parallel_over_indices(n, t, [&](int worker, long i) {
        const std::vector<double> roots = sample_roots(degree, seed, i, RootLaw::LogUniformModulus, 3.0);
        const std::vector<double> low = expand_roots_low(roots);
        double scale = 1.0;
        for (double a : low) scale = std::max(scale, std::fabs(a));
        for (double a : low)
            if (std::fabs(a) < 1e-12 * scale) return;
        const MonicD p{std::vector<double>(low)};
        const DescartesReport dr = verify_descartes_from_roots(roots, p);
        ++admitted[static_cast<size_t>(worker)];
        if (!dr.satisfied || !dr.equality_case) ++violations[static_cast<size_t>(worker)];
    });
    for (int w = 0; w < t; ++w) {
        rep.admitted += admitted[static_cast<size_t>(w)];
        rep.violations += violations[static_cast<size_t>(w)];
    }
    rep.pass = rep.violations == 0 && rep.admitted > 0;
    return rep;
}

std::string IncidenceTable::to_json() const {
    json j;
    j["degree"] = degree;
    j["n_samples"] = n_samples;
    j["seed"] = seed;
    j["restrict"] = restricted_a_positive ? "a>0" : "none";
    j["admitted"] = admitted;
    json sp2mo = json::object();
    for (const auto& [sp, mos] : sp_to_mos) {
        json inner = json::object();
        for (const auto& [mo, count] : mos) inner[mo] = count;
        sp2mo[sp] = inner;
    }
    j["sp_to_mos"] = sp2mo;
    json mo2sp = json::object();
    for (const auto& [mo, sps] : mo_to_sps) {
        json inner = json::object();
        for (const auto& [sp, count] : sps) inner[sp] = count;
        mo2sp[mo] = inner;
    }
    j["mo_to_sps"] = mo2sp;
    return j.dump(2);
}

std::string IncidenceTable::to_csv() const {
    std::ostringstream os;
    os << "sp,mo,count\n";
    for (const auto& [sp, mos] : sp_to_mos)
        for (const auto& [mo, count] : mos) os << '"' << sp << "\"," << mo << ',' << count << '\n';
    return os.str();
}

}  // namespace hypatlas
