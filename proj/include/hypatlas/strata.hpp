#ifndef HYPATLAS_STRATA_HPP
#define HYPATLAS_STRATA_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypatlas/patterns.hpp"
#include "hypatlas/poly.hpp"
#include "hypatlas/roots.hpp"

namespace hypatlas {

/// Phi(a,b,c,h) = a^2 h + (c - a b) c; its zero set is the union of the loci
/// with an opposite real root pair, a purely imaginary pair, or a double
/// root at zero (degree 4).
template <class T>
T phi(const T& a, const T& b, const T& c, const T& h) {
    return a * a * h + (c - a * b) * c;
}

/// Coordinates flattening Phi = 0 onto the Whitney umbrella omega^2 = rho a^2.
template <class T>
std::pair<T, T> whitney_coordinates(const T& a, const T& b, const T& c, const T& h) {
    return {c - a * b / T(2), b * b / T(4) - h};
}

enum class HypPosition { Interior, Boundary, Outside };
std::string_view to_string(HypPosition p);

struct StratumLabel {
    int degree = 0;
    HypPosition hyperbolic = HypPosition::Outside;
    MultiplicityPartition partition;
    SignPattern sp;
    std::optional<ModuliOrder> mo;
    bool in_E = false, in_F = false, in_G = false, in_Delta = false;
    std::optional<std::string> id;
    bool certified = false;

    std::vector<std::string> memberships() const;
    std::string to_json() const;
};

struct Classification {
    std::vector<StratumLabel> labels;  // front: label of the point itself
    bool certified = false;
    bool ambiguous() const { return labels.size() > 1; }
    const StratumLabel& primary() const { return labels.front(); }
};

/// Exact classification; enumerated ids cover d <= 3 strata and d = 4 landmarks.
Classification classify(const MonicQ& p);
/// Float classification; near-boundary points widen to candidate label sets.
Classification classify(const MonicD& p, double tol = kDefaultRootTol);

/// Catalog of the enumerated strata (d <= 3).
struct StratumInfo {
    std::string id;
    int degree;
    int slice;  // 1: the a=1 slice (or the unrestricted d<=2 plane), 0: the a=0 slice
    int dim;
    std::string spaz;
    std::string moae;
    MultiplicityPartition partition;
    bool in_E = false, in_G = false, in_Delta = false;
    HypPosition pos = HypPosition::Interior;
};
const std::vector<StratumInfo>& stratum_catalog(int degree);
const StratumInfo* find_stratum(int degree, std::string_view id);

struct LandmarkPoint {
    std::string name;
    int degree;
    std::vector<Rat> coords;  // a_{d-1}, ..., a_0
    MonicQ poly;
    MultiplicityPartition partition;
    bool in_E = false, in_F = false, in_G = false, in_Delta = false;
};
const LandmarkPoint& landmark(std::string_view name, int degree);
const std::vector<LandmarkPoint>& all_landmarks();

struct EtildeMembership {
    bool in_E = false, in_F = false, in_G = false;
    std::vector<double> e_witnesses;  // moduli v of opposite pairs +/-v
    std::vector<double> f_witnesses;  // moduli beta of imaginary pairs +/-i beta
    int zero_multiplicity = 0;
    std::optional<bool> phi_vanishes;  // degree-4 cross-check
    bool certified = false;

    bool any() const { return in_E || in_F || in_G; }
};
EtildeMembership etilde_membership(const MonicQ& p);
EtildeMembership etilde_membership(const MonicD& p, double tol = kDefaultRootTol);

// ---- figure curves ----

enum class CurveId {
    Pi2Boundary,   // b = a^2/4 in (a, b)
    C3,            // boundary of the a=1 cubic slice in (b, c)
    E3,            // b = c < 0 half-line, opposite-pair cubics at a=1
    F3,            // b = c > 0 half-line, imaginary-pair cubics at a=1
    S4,            // triple-root projection in (b, c[, h]) at a=1
    LR4,           // two-double-real-root stratum, (b, c, h), c linear in b, h = c^2
    LI4,           // its continuation: double complex pair
    H4,            // h = 0 slice boundary of the quartic domain, (b, c, h=0)
    Pcal4,         // (b - 2c)^2 + c = 0 projection of the quartic pair locus at a=1
    DiscSlice,     // double-root curve of the (a=a0, b=b0) quartic slice in (c, h)
    EtildeSlice,   // h = c(a b - c)/a^2 parabola of the (a=a0, b=b0) slice
    EvenDiscSlice  // DiscSlice at a0 = 0
};
std::string_view curve_name(CurveId id);
std::optional<CurveId> parse_curve_name(std::string_view s);

struct SingularPoint {
    enum class Kind { Cusp, SelfIntersection } kind;
    double param = 0;                  // second branch parameter for self-intersections
    std::optional<double> param2;
    std::vector<double> point;
};

struct CurvePolyline {
    CurveId id;
    std::string param_name;
    std::vector<std::string> coord_names;
    Rat a{1}, b{0};  // slice parameters where meaningful
    std::vector<Rat> params;
    std::vector<std::vector<Rat>> points;  // exact samples on the curve
    std::vector<SingularPoint> singular_points;

    std::string to_csv() const;
    std::string to_json() const;
    std::string singular_json() const;
};

/// Sample a named curve on [lo, hi] (intersected with the curve's natural
/// domain; throws if the intersection is empty). Samples are exact.
CurvePolyline emit_curve(CurveId id, std::optional<std::pair<Rat, Rat>> range, int n_samples,
                         const Rat& a = Rat(1), const Rat& b = Rat(0));
std::pair<Rat, Rat> default_range(CurveId id);

}  // namespace hypatlas

#endif
