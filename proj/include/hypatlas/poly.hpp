#ifndef HYPATLAS_POLY_HPP
#define HYPATLAS_POLY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypatlas/rational.hpp"

namespace hypatlas {

inline bool coeff_is_zero(const Rat& x) { return x.is_zero(); }
inline bool coeff_is_zero(double x) { return x == 0.0; }

/// Dense univariate polynomial, coeffs()[k] is the coefficient of x^k.
/// Normalized: no stored leading zeros; the zero polynomial has no coefficients.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
    static Poly monomial(int k, T lead = T(1)) {
        std::vector<T> c(static_cast<size_t>(k) + 1, T(0));
        c.back() = std::move(lead);
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<T>& coeffs() const { return c_; }

    T coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return T(0);
        return c_[static_cast<size_t>(k)];
    }
    const T& lead() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

    T eval(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (degree() <= 0) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<int>(k));
        return Poly(std::move(d));
    }

    /// p(-x)
    Poly reflect() const {
        std::vector<T> c = c_;
        for (size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
        return Poly(std::move(c));
    }

    /// p(t*x) for the root dilatation x -> x/t is handled by callers; this is plain substitution.
    Poly scale_arg(const T& t) const {
        std::vector<T> c = c_;
        T pw(1);
        for (size_t k = 0; k < c.size(); ++k) {
            c[k] = c[k] * pw;
            pw = pw * t;
        }
        return Poly(std::move(c));
    }

    Poly monic() const {
        if (is_zero()) throw std::domain_error("monic(): zero polynomial");
        std::vector<T> c = c_;
        const T inv = T(1) / c.back();
        for (auto& v : c) v = v * inv;
        return Poly(std::move(c));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] + b.c_[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] - b.c_[k];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> c = a.c_;
        for (auto& v : c) v = -v;
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const T& s) {
        std::vector<T> c = a.c_;
        for (auto& v : c) v = v * s;
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using PolyQ = Poly<Rat>;
using PolyD = Poly<double>;

/// Quotient and remainder over a field.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& num, const Poly<T>& den) {
    if (den.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    std::vector<T> r(num.coeffs());
    const int dn = num.degree(), dd = den.degree();
    if (dn < dd) return {Poly<T>(), num};
    std::vector<T> q(static_cast<size_t>(dn - dd) + 1, T(0));
    for (int k = dn; k >= dd; --k) {
        T& top = r[static_cast<size_t>(k)];
        if (coeff_is_zero(top)) continue;
        const T f = top / den.lead();
        q[static_cast<size_t>(k - dd)] = f;
        for (int j = 0; j <= dd; ++j)
            r[static_cast<size_t>(k - dd + j)] = r[static_cast<size_t>(k - dd + j)] - f * den.coeff(j);
        top = T(0);
    }
    return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

/// Monic gcd over the rationals (Euclid with monic normalization each step).
PolyQ gcd_monic(PolyQ a, PolyQ b);

/// Monic polynomial of degree >= 1; only the low coefficients a_0..a_{d-1} are stored.
template <class T>
class Monic {
public:
    explicit Monic(std::vector<T> low) : low_(std::move(low)) {
        if (low_.empty()) throw std::invalid_argument("Monic: degree must be >= 1");
        if constexpr (std::is_same_v<T, double>) {
            for (double v : low_)
                if (!std::isfinite(v)) throw std::invalid_argument("Monic: non-finite coefficient");
        }
    }

    static Monic from_poly(const Poly<T>& p) {
        if (!p.is_monic() || p.degree() < 1) throw std::invalid_argument("Monic::from_poly: not monic of degree >= 1");
        std::vector<T> low(p.coeffs().begin(), p.coeffs().end() - 1);
        return Monic(std::move(low));
    }

    int degree() const { return static_cast<int>(low_.size()); }
    /// Coefficient of x^j, 0 <= j <= degree (returns 1 at j == degree).
    T coeff(int j) const {
        if (j == degree()) return T(1);
        if (j < 0 || j > degree()) return T(0);
        return low_[static_cast<size_t>(j)];
    }
    const std::vector<T>& low_coeffs() const { return low_; }

    Poly<T> to_poly() const {
        std::vector<T> c = low_;
        c.push_back(T(1));
        return Poly<T>(std::move(c));
    }
    T eval(const T& x) const { return to_poly().eval(x); }

    /// Root dilatation x -> t*x applied to the root set: coefficients a_j -> t^(d-j) a_j.
    Monic dilate(const T& t) const {
        std::vector<T> c = low_;
        T pw = t;
        for (int j = degree() - 1; j >= 0; --j) {
            c[static_cast<size_t>(j)] = c[static_cast<size_t>(j)] * pw;
            pw = pw * t;
        }
        return Monic(std::move(c));
    }

    friend bool operator==(const Monic& a, const Monic& b) { return a.low_ == b.low_; }

private:
    std::vector<T> low_;
};

using MonicQ = Monic<Rat>;
using MonicD = Monic<double>;

/// (x^2 - v^2) W(x), v != 0, W monic
struct OppositePairForm {
    Rat v;
    MonicQ w;
};
/// (x^2 + A) W(x), A > 0, W monic
struct ImaginaryPairForm {
    Rat a;
    MonicQ w;
};
/// (x^2 - u^2)(x^2 + x + w)
struct EvenTimesQuadraticForm {
    Rat u;
    Rat w;
};
using FactoredForm = std::variant<OppositePairForm, ImaginaryPairForm, EvenTimesQuadraticForm>;

MonicQ expand(const FactoredForm& f);

template <class T>
Monic<T> expand_roots(const std::vector<std::pair<T, int>>& roots) {
    Poly<T> acc = Poly<T>::constant(T(1));
    int deg = 0;
    for (const auto& [r, m] : roots) {
        if (m <= 0) throw std::invalid_argument("expand_roots: multiplicity must be positive");
        const Poly<T> lin(std::vector<T>{-r, T(1)});
        for (int i = 0; i < m; ++i) acc = acc * lin;
        deg += m;
    }
    if (deg < 1) throw std::invalid_argument("expand_roots: empty root list");
    return Monic<T>::from_poly(acc);
}

template <class T>
Monic<T> expand_factors(const std::vector<Monic<T>>& factors) {
    if (factors.empty()) throw std::invalid_argument("expand_factors: empty factor list");
    Poly<T> acc = Poly<T>::constant(T(1));
    for (const auto& f : factors) acc = acc * f.to_poly();
    return Monic<T>::from_poly(acc);
}

/// Plain root-product expansion for the sampling paths (roots, all simple).
std::vector<double> expand_roots_low(const std::vector<double>& roots);

/// Sylvester resultant; zero iff the inputs share a root over the complex numbers.
Rat resultant(const PolyQ& p, const PolyQ& q);
inline Rat resultant(const MonicQ& p, const PolyQ& q) { return resultant(p.to_poly(), q); }

/// Res(P, P') of the monic polynomial P.
Rat discriminant_resultant(const MonicQ& p);

struct SturmChain {
    std::vector<PolyQ> seq;
    static SturmChain build(const PolyQ& p);
    int variations_at(const Rat& x) const;
    int variations_at_neg_inf() const;
    int variations_at_pos_inf() const;
};

struct RealInterval {
    std::optional<Rat> lo, hi;  // nullopt = unbounded on that side
    bool lo_closed = false, hi_closed = false;
    static RealInterval whole_line() { return {}; }
    static RealInterval open(Rat a, Rat b) { return {std::move(a), std::move(b), false, false}; }
    static RealInterval closed(Rat a, Rat b) { return {std::move(a), std::move(b), true, true}; }
    static RealInterval positive_axis() { return {Rat(0), std::nullopt, false, false}; }
    static RealInterval negative_axis() { return {std::nullopt, Rat(0), false, false}; }
};

/// Number of distinct real roots of p in the interval (exact).
int sturm_distinct_real_roots(const PolyQ& p, const RealInterval& iv = RealInterval::whole_line());
inline int sturm_distinct_real_roots(const MonicQ& p, const RealInterval& iv = RealInterval::whole_line()) {
    return sturm_distinct_real_roots(p.to_poly(), iv);
}

/// Yun square-free decomposition: product of factor^multiplicity equals p (monic factors).
std::vector<std::pair<PolyQ, int>> square_free_decomposition(const PolyQ& p);
std::vector<std::pair<PolyQ, int>> square_free_decomposition(const MonicQ& p);

/// Product of the distinct factors (monic).
PolyQ square_free_part(const PolyQ& p);

/// True iff no two adjacent coefficients of the full sequence (leading 1 included) both vanish.
template <class T>
bool no_consecutive_zeros(const Monic<T>& p) {
    for (int j = p.degree() - 1; j > 0; --j)
        if (coeff_is_zero(p.coeff(j)) && coeff_is_zero(p.coeff(j - 1))) return false;
    return true;
}

}  // namespace hypatlas

#endif
