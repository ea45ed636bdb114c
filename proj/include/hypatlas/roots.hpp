#ifndef HYPATLAS_ROOTS_HPP
#define HYPATLAS_ROOTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "hypatlas/poly.hpp"
#include "hypatlas/rational.hpp"

namespace hypatlas {

enum class RootTag { Real, ComplexPair };

struct Root {
    double value = 0.0;  // real value, or real part of the pair representative
    double imag = 0.0;   // > 0 for ComplexPair entries
    int multiplicity = 1;
    RootTag tag = RootTag::Real;
    // Exact-path payload (absent on the float path):
    std::optional<Rat> exact_value;                 // set when the root is rational
    std::optional<std::pair<Rat, Rat>> enclosure;   // isolating interval otherwise
    int modulus_group = -1;                         // equal-modulus class, increasing with modulus
};

struct RootMultiset {
    std::vector<Root> entries;   // Real entries first, sorted ascending; pairs after
    double tolerance_used = 0.0;
    bool certified = false;      // exact pipeline
    bool demoted_pair = false;   // a conjugate pair was collapsed to a double real root
    bool converged = true;

    int total_multiplicity() const {
        int n = 0;
        for (const auto& r : entries) n += r.multiplicity * (r.tag == RootTag::ComplexPair ? 2 : 1);
        return n;
    }
};

inline constexpr double kDefaultRootTol = 1e-8;

/// Float path: companion-matrix eigenvalues, Newton refinement, greedy
/// multiplicity clustering at radius tol*(1+|root|).
RootMultiset all_roots(const MonicD& p, double tol = kDefaultRootTol);

/// Exact path: square-free decomposition + Sturm isolation; moduli equalities
/// and orderings are decided exactly and stored in modulus_group.
RootMultiset all_roots(const MonicQ& p);

struct HyperbolicityReport {
    bool hyperbolic = false;
    bool certified = false;
    int distinct_real_roots = 0;
    int square_free_degree = 0;
    bool demoted_pair = false;
};

HyperbolicityReport is_hyperbolic(const MonicQ& p);
HyperbolicityReport is_hyperbolic(const MonicD& p, double tol = kDefaultRootTol);

/// Partition of the degree by root multiplicities, sorted descending;
/// a complex pair of multiplicity m contributes two parts m, m.
using MultiplicityPartition = std::vector<int>;
MultiplicityPartition multiplicity_partition(const RootMultiset& r);
MultiplicityPartition multiplicity_partition(const MonicQ& p);
MultiplicityPartition multiplicity_partition(const MonicD& p, double tol = kDefaultRootTol);

/// Isolated real root of a square-free polynomial: either exact (lo == hi)
/// or an open interval with sign change, holding exactly one root.
struct IsolatedRoot {
    PolyQ poly;  // square-free, sign-definite at the interval ends
    Rat lo, hi;
    int multiplicity = 1;
    bool is_exact() const { return lo == hi; }
    bool contains_zero() const { return is_exact() ? lo.is_zero() : (lo < 0 && hi > 0); }
    int sign() const {  // sign of the root itself
        if (is_exact()) return sgn(lo);
        if (hi <= 0) return -1;
        if (lo >= 0) return 1;
        return 0;  // unresolved straddle; callers refine first
    }
    double midpoint() const { return is_exact() ? to_double(lo) : to_double(Rat((lo + hi) / 2)); }
};

/// All real roots of a square-free polynomial, ascending, intervals disjoint.
std::vector<IsolatedRoot> isolate_real_roots(const PolyQ& square_free);

/// Halve the interval width (exact bisection; collapses onto rational roots).
void refine(IsolatedRoot& r);

/// Refine both until their intervals are disjoint, then compare. Requires
/// the two roots to be distinct.
int compare_roots(IsolatedRoot& a, IsolatedRoot& b);

}  // namespace hypatlas

#endif
