#ifndef HYPATLAS_VERIFY_HPP
#define HYPATLAS_VERIFY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypatlas/linalg.hpp"
#include "hypatlas/poly.hpp"

namespace hypatlas {

/// Rank of the Jacobian of (c_0..c_{d-3}, v) -> (a_0..a_{d-1}) for the
/// opposite-pair factorization (x^2 - v^2) W(x); full rank d-1 whenever
/// v != 0 and W(+-v) != 0.
struct JacobianReport {
    int degree = 0;
    Rat v;
    std::vector<Rat> w_low;  // low coefficients of W
    int rank = 0;
    Rat u0, u1;              // reduced last-row entries
    std::string witness;     // which of U0 +/- v U1 is nonzero
    bool hypothesis_ok = false;
    bool identity_ok = false;  // U0 +/- v U1 == -2 v W(+-v), both signs
    bool certified = false;    // hypotheses hold and rank == degree - 1
};
JacobianReport jacobian_rank(const MonicQ& w, const Rat& v);

/// Vandermonde determinant of rows (1, t, ..., t^{s-1}).
Rat vandermonde_det(const std::vector<Rat>& params);

/// Independence of the normal vectors of s opposite-pair hypersurfaces:
/// parameter values t_j = -v_j^2. Throws on repeated or nonpositive v_j.
struct TransversalityReport {
    int s = 0;
    std::vector<Rat> params;
    Rat det;
    bool independent = false;
};
TransversalityReport transversality_check(const std::vector<Rat>& v_values);
/// Mixed variant: opposite pairs contribute -v^2, imaginary pairs A.
/// Throws when the combined parameter values coincide.
TransversalityReport transversality_mixed(const std::vector<Rat>& v_values, const std::vector<Rat>& a_values);

struct HessianReport {
    std::array<Rat, 4> point;
    std::array<std::array<Rat, 4>, 4> hessian;
    int rank = 0;
};
HessianReport hessian_rank(const Rat& a, const Rat& b, const Rat& c, const Rat& h);

struct WhitneyCheckReport {
    int n_samples = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    Rat max_residual;
};
/// Phi == omega^2 - rho a^2 at random rational points; residual must be exactly zero.
WhitneyCheckReport whitney_identity_check(int n_samples, std::uint64_t seed);

struct ResultantFamilyReport {
    int n_samples = 0;
    std::uint64_t seed = 0;
    bool vanishing_agree = false;
    bool ratio_constant = false;
    std::optional<Rat> ratio;
    int zero_cases = 0;
    bool pass = false;
};
/// Res(Q4, Q4') of (x^2-u^2)(x^2+x+w) against -4u^2(u^2+u+w)^2(u^2-u+w)^2(4w-1).
ResultantFamilyReport resultant_family_check(int n_samples, std::uint64_t seed);

// ---- batch sweeps (CLI and acceptance drivers) ----

struct JacobianSweepReport {
    int degree_lo = 0, degree_hi = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    long rank_failures = 0;
    long identity_failures = 0;
    bool pass = false;
};
JacobianSweepReport jacobian_sweep(int degree_lo, int degree_hi, int trials, std::uint64_t seed);

struct HessianGridReport {
    int n = 0;
    long mismatches = 0;
    long rank1 = 0, rank2 = 0;
    bool pass = false;
};
/// n x n rational grid on the plane a = c = 0: exact rank must be 1 exactly
/// on 4h = b^2 and 2 elsewhere.
HessianGridReport hessian_grid(int n);

struct TransversalitySweepReport {
    int pool_size = 0;
    std::uint64_t seed = 0;
    long subsets_checked = 0;
    long failures = 0;
    bool pass = false;
};
/// Exhaustive subsets of a rational parameter pool (with planted repeats):
/// det != 0 must hold exactly when the chosen parameters are pairwise distinct.
TransversalitySweepReport transversality_sweep(int pool_size, std::uint64_t seed);

/// Uniform rational with numerator in [-height, height] and denominator in [1, height].
Rat random_rational(std::uint64_t seed, std::uint64_t index, int stream, int height = 100);

}  // namespace hypatlas

#endif
