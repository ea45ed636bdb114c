#include "hypatlas/poly.hpp"

#include "hypatlas/linalg.hpp"

namespace hypatlas {

PolyQ gcd_monic(PolyQ a, PolyQ b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        PolyQ r = divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? std::move(r) : r.monic();
    }
    return a;  // already monic
}

MonicQ expand(const FactoredForm& f) {
    struct Visitor {
        MonicQ operator()(const OppositePairForm& g) const {
            if (g.v.is_zero()) throw std::invalid_argument("expand: opposite-pair factor requires v != 0");
            const PolyQ quad(std::vector<Rat>{-(g.v * g.v), Rat(0), Rat(1)});
            return MonicQ::from_poly(quad * g.w.to_poly());
        }
        MonicQ operator()(const ImaginaryPairForm& g) const {
            if (g.a <= 0) throw std::invalid_argument("expand: imaginary-pair factor requires A > 0");
            const PolyQ quad(std::vector<Rat>{g.a, Rat(0), Rat(1)});
            return MonicQ::from_poly(quad * g.w.to_poly());
        }
        MonicQ operator()(const EvenTimesQuadraticForm& g) const {
            const PolyQ left(std::vector<Rat>{-(g.u * g.u), Rat(0), Rat(1)});
            const PolyQ right(std::vector<Rat>{g.w, Rat(1), Rat(1)});
            return MonicQ::from_poly(left * right);
        }
    };
    return std::visit(Visitor{}, f);
}

std::vector<double> expand_roots_low(const std::vector<double>& roots) {
    // low-order-first product of (x - r)
    std::vector<double> c{1.0};
    for (double r : roots) {
        c.push_back(0.0);
        for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return std::vector<double>(c.begin(), c.end() - 1);
}

Rat resultant(const PolyQ& p, const PolyQ& q) {
    if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant: zero polynomial input");
    const int m = p.degree(), n = q.degree();
    if (m == 0) {
        Rat r(1);
        for (int i = 0; i < n; ++i) r *= p.lead();
        return r;
    }
    if (n == 0) {
        Rat r(1);
        for (int i = 0; i < m; ++i) r *= q.lead();
        return r;
    }
    MatQ s(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s.at(i, i + j) = p.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s.at(n + i, i + j) = q.coeff(n - j);
    return exact_det(s);
}

Rat discriminant_resultant(const MonicQ& p) { return resultant(p.to_poly(), p.to_poly().derivative()); }

SturmChain SturmChain::build(const PolyQ& p) {
    SturmChain sc;
    if (p.is_zero()) return sc;
    sc.seq.push_back(p);
    PolyQ d = p.derivative();
    if (d.is_zero()) return sc;
    sc.seq.push_back(std::move(d));
    while (true) {
        const PolyQ& a = sc.seq[sc.seq.size() - 2];
        const PolyQ& b = sc.seq[sc.seq.size() - 1];
        PolyQ r = divmod(a, b).second;
        if (r.is_zero()) break;
        sc.seq.push_back(-r);
    }
    return sc;
}

static int count_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int SturmChain::variations_at(const Rat& x) const {
    std::vector<int> s;
    s.reserve(seq.size());
    for (const auto& p : seq) s.push_back(sgn(p.eval(x)));
    return count_variations(s);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> s;
    s.reserve(seq.size());
    for (const auto& p : seq) s.push_back(sgn(p.lead()));
    return count_variations(s);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> s;
    s.reserve(seq.size());
    for (const auto& p : seq) s.push_back(p.degree() % 2 == 0 ? sgn(p.lead()) : -sgn(p.lead()));
    return count_variations(s);
}

int sturm_distinct_real_roots(const PolyQ& p, const RealInterval& iv) {
    if (p.is_zero()) throw std::domain_error("sturm_distinct_real_roots: zero polynomial");
    if (p.degree() == 0) return 0;
    const SturmChain sc = SturmChain::build(p);
    const int va = iv.lo ? sc.variations_at(*iv.lo) : sc.variations_at_neg_inf();
    const int vb = iv.hi ? sc.variations_at(*iv.hi) : sc.variations_at_pos_inf();
    int n = va - vb;  // roots in (lo, hi]
    if (iv.hi && !iv.hi_closed && p.eval(*iv.hi).is_zero()) --n;
    if (iv.lo && iv.lo_closed && p.eval(*iv.lo).is_zero()) ++n;
    return n;
}

std::vector<std::pair<PolyQ, int>> square_free_decomposition(const PolyQ& p) {
    if (p.is_zero()) throw std::domain_error("square_free_decomposition: zero polynomial");
    std::vector<std::pair<PolyQ, int>> out;
    if (p.degree() == 0) return out;
    const PolyQ f = p.monic();
    const PolyQ fp = f.derivative();
    PolyQ a0 = gcd_monic(f, fp);
    PolyQ b = divmod(f, a0).first;
    PolyQ c = divmod(fp, a0).first;
    PolyQ d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        PolyQ ai = gcd_monic(b, d);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
    }
    return out;
}

std::vector<std::pair<PolyQ, int>> square_free_decomposition(const MonicQ& p) {
    return square_free_decomposition(p.to_poly());
}

PolyQ square_free_part(const PolyQ& p) {
    PolyQ out = PolyQ::constant(Rat(1));
    for (const auto& [f, m] : square_free_decomposition(p)) out = out * f;
    return out;
}

}  // namespace hypatlas
