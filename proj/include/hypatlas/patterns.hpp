#ifndef HYPATLAS_PATTERNS_HPP
#define HYPATLAS_PATTERNS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypatlas/poly.hpp"
#include "hypatlas/roots.hpp"

namespace hypatlas {

/// Coefficient sign sequence (+, sgn a_{d-1}, ..., sgn a_0); leading entry is +.
struct SignPattern {
    std::vector<int> signs;  // entries in {-1, 0, +1}, signs.front() == +1

    int degree() const { return static_cast<int>(signs.size()) - 1; }
    bool has_zeros() const {
        for (int s : signs)
            if (s == 0) return true;
        return false;
    }
    std::string str() const;
    static std::optional<SignPattern> parse(std::string_view s);

    friend bool operator==(const SignPattern&, const SignPattern&) = default;
    friend bool operator<(const SignPattern& a, const SignPattern& b) { return a.signs < b.signs; }
};

template <class T>
SignPattern sign_pattern(const Monic<T>& p) {
    SignPattern sp;
    sp.signs.push_back(1);
    for (int j = p.degree() - 1; j >= 0; --j) sp.signs.push_back(sgn(p.coeff(j)));
    return sp;
}

struct DescartesCounts {
    int c = 0;               // sign changes
    std::optional<int> p;    // sign preservations; defined only without zeros
    int c_prime = 0;         // sign changes of the reflected coefficient sequence
};

DescartesCounts descartes_counts(const SignPattern& sp);

enum class MoLetter { Zero, P, N };

/// Moduli order: letters by increasing modulus, '=' joins equal moduli.
/// Within an equality group the serialization order is 0, then P, then N.
struct ModuliOrder {
    std::vector<MoLetter> letters;
    std::vector<bool> equal_to_prev;  // size letters.size()-1; true renders '='

    bool has_equalities() const {
        for (bool e : equal_to_prev)
            if (e) return true;
        return false;
    }
    int count(MoLetter l) const {
        int n = 0;
        for (MoLetter x : letters) n += (x == l);
        return n;
    }
    /// Group-normalized copy (groups sorted 0 < P < N internally).
    ModuliOrder normalized() const;
    std::string str() const;  // normalized serialization
    static std::optional<ModuliOrder> parse(std::string_view s);

    friend bool operator==(const ModuliOrder& a, const ModuliOrder& b) {
        const ModuliOrder x = a.normalized(), y = b.normalized();
        return x.letters == y.letters && x.equal_to_prev == y.equal_to_prev;
    }
};

/// Moduli order of an all-real root multiset. Throws on complex entries.
/// The exact path uses the stored equal-modulus classes; the float path
/// groups moduli within tol*(1+modulus).
ModuliOrder moduli_order(const RootMultiset& roots, double tol = kDefaultRootTol);

/// Canonical moduli order of a zero-free sign pattern: read the pattern from
/// the back, mapping equal adjacent signs to N and opposite ones to P.
ModuliOrder canonical_mo(const SignPattern& sp);

struct DescartesReport {
    int pos = 0, neg = 0;
    int c = 0;
    std::optional<int> p;
    bool satisfied = false;
    bool equality_case = false;
    bool certified = false;
};

/// Exact check of the sign rule; equality_case marks the hyperbolic,
/// zero-free situation where pos == c and neg == p must hold.
DescartesReport verify_descartes(const MonicQ& p);

/// Same check driven by known roots (sampling path; roots are exact by construction).
DescartesReport verify_descartes_from_roots(const std::vector<double>& roots, const MonicD& expanded);

}  // namespace hypatlas

#endif
