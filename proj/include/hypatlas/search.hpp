#ifndef HYPATLAS_SEARCH_HPP
#define HYPATLAS_SEARCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypatlas/patterns.hpp"
#include "hypatlas/poly.hpp"

namespace hypatlas {

enum class RootLaw {
    Uniform,            // roots uniform on [-R, R]
    LogUniformModulus,  // modulus 10^U, U uniform on [-3, 3], fair-coin sign
};

struct SampleConfig {
    int degree = 3;
    long n = 100000;
    std::uint64_t seed = 0;
    RootLaw law = RootLaw::LogUniformModulus;
    double uniform_radius = 3.0;
    double tol = 1e-8;           // moduli-closeness and zero-coefficient filters
    bool restrict_a_positive = false;
    int threads = 0;             // 0: decide from HYPATLAS_THREADS / hardware
};

/// Roots of sample `index` under the law; deterministic in (seed, index).
std::vector<double> sample_roots(int degree, std::uint64_t seed, long index, RootLaw law, double radius);

/// The sample as a monic polynomial: hyperbolic by construction.
MonicD sample_hyperbolic(int degree, std::uint64_t seed, long index, RootLaw law = RootLaw::LogUniformModulus,
                         double radius = 3.0);

/// (sign pattern <-> moduli order) incidence over root-space samples.
/// Only open-stratum samples are admitted: no vanishing coefficient, no two
/// moduli within the clustering tolerance.
struct IncidenceTable {
    int degree = 0;
    long n_samples = 0;
    std::uint64_t seed = 0;
    bool restricted_a_positive = false;
    long admitted = 0;
    std::map<std::string, std::map<std::string, long>> sp_to_mos;
    std::map<std::string, std::map<std::string, long>> mo_to_sps;

    std::string to_json() const;
    std::string to_csv() const;
};
IncidenceTable build_incidence(const SampleConfig& cfg);

struct CanonicalRow {
    std::string sp;
    std::vector<std::string> mos;  // observed
    std::string canonical;         // canonical MO of the pattern
    bool empirically_canonical = false;
    long samples = 0;
};
std::vector<CanonicalRow> canonical_report(const IncidenceTable& table);

struct RigidRow {
    std::string mo;
    std::vector<std::string> sps;  // observed
    bool empirically_rigid = false;
    long samples = 0;
};
std::vector<RigidRow> rigid_report(const IncidenceTable& table);

/// Expected canonical/rigid lists for d <= 4 (d = 4 restricted to a > 0).
struct ExpectedLists {
    std::set<std::string> canonical_sps;
    std::set<std::string> non_canonical_sps;
    std::set<std::string> rigid_mos;
};
std::optional<ExpectedLists> expected_lists(int degree, bool restrict_a_positive);

struct ExpectationCheck {
    bool pass = false;
    std::vector<std::string> mismatches;
};
ExpectationCheck check_expectations(const IncidenceTable& table);

/// pos == c and neg == p over sampled hyperbolic polynomials without
/// vanishing coefficients.
struct DescartesSweepReport {
    int degree = 0;
    long n = 0;
    std::uint64_t seed = 0;
    long admitted = 0;
    long violations = 0;
    bool pass = false;
};
DescartesSweepReport descartes_sweep(int degree, long n, std::uint64_t seed, int threads = 0);

/// Worker count: explicit > HYPATLAS_THREADS > hardware concurrency.
int resolve_threads(int requested);

}  // namespace hypatlas

#endif
