#include "hypatlas/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <cmath>
#include <complex>

namespace hypatlas {

namespace {

std::complex<double> horner(const std::vector<double>& low, std::complex<double> z) {
    std::complex<double> acc(1.0, 0.0);  // monic
    for (auto it = low.rbegin(); it != low.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::complex<double> horner_deriv(const std::vector<double>& low, std::complex<double> z) {
    const int d = static_cast<int>(low.size());
    std::complex<double> acc(static_cast<double>(d), 0.0);
    for (int k = d - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * low[static_cast<size_t>(k)];
    return acc;
}

std::complex<double> newton_refine(const std::vector<double>& low, std::complex<double> z) {
    std::complex<double> best = z;
    double best_abs = std::abs(horner(low, z));
    for (int iter = 0; iter < 8; ++iter) {
        const std::complex<double> pv = horner(low, z);
        const std::complex<double> dv = horner_deriv(low, z);
        if (std::abs(dv) < 1e-300) break;
        z -= pv / dv;
        const double a = std::abs(horner(low, z));
        if (a < best_abs) {
            best_abs = a;
            best = z;
        } else {
            break;
        }
    }
    return best;
}

struct Cluster {
    std::vector<std::complex<double>> members;
    std::complex<double> mean() const {
        std::complex<double> s(0, 0);
        for (auto& m : members) s += m;
        return s / static_cast<double>(members.size());
    }
};

std::vector<Cluster> greedy_cluster(std::vector<std::complex<double>> pts, double tol) {
    std::sort(pts.begin(), pts.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Cluster> out;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        Cluster c;
        c.members.push_back(pts[i]);
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            const std::complex<double> m = c.mean();
            const double radius = tol * (1.0 + std::abs(m));
            for (size_t j = 0; j < pts.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(pts[j] - m) <= radius) {
                    c.members.push_back(pts[j]);
                    used[j] = true;
                    grew = true;
                }
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

RootMultiset all_roots(const MonicD& p, double tol) {
    if (tol <= 0) throw std::invalid_argument("all_roots: tol must be positive on the float path");
    const int d = p.degree();
    const std::vector<double>& low = p.low_coeffs();

    RootMultiset out;
    out.tolerance_used = tol;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -low[static_cast<size_t>(i)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        out.converged = false;
        return out;
    }

    std::vector<std::complex<double>> reals, pairs;
    bool demoted = false;
    for (int i = 0; i < d; ++i) {
        std::complex<double> z = solver.eigenvalues()(i);
        z = newton_refine(low, z);
        if (std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real()))) {
            if (z.imag() != 0.0) demoted = true;
            reals.emplace_back(z.real(), 0.0);
        } else if (z.imag() > 0.0) {
            pairs.push_back(z);
        }
    }
    out.demoted_pair = demoted;

    for (const Cluster& c : greedy_cluster(std::move(reals), tol)) {
        Root r;
        r.value = c.mean().real();
        r.multiplicity = static_cast<int>(c.members.size());
        r.tag = RootTag::Real;
        out.entries.push_back(r);
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
    for (const Cluster& c : greedy_cluster(std::move(pairs), tol)) {
        Root r;
        const std::complex<double> m = c.mean();
        r.value = m.real();
        r.imag = std::abs(m.imag());
        r.multiplicity = static_cast<int>(c.members.size());
        r.tag = RootTag::ComplexPair;
        out.entries.push_back(r);
    }
    return out;
}

std::vector<IsolatedRoot> isolate_real_roots(const PolyQ& f) {
    std::vector<IsolatedRoot> out;
    if (f.degree() < 1) return out;
    const PolyQ p = f.monic();
    Rat bound(1);
    for (int k = 0; k < p.degree(); ++k) bound = std::max(bound, rat_abs(p.coeff(k)));
    bound += 1;

    const SturmChain chain = SturmChain::build(p);
    auto var = [&](const Rat& x) { return chain.variations_at(x); };

    // Segment endpoints are kept off the root set, so (a, b] counts equal open
    // counts and no root is ever reported twice. Exact rational roots found at
    // bisection points are emitted and excised with a small root-free collar.
    std::function<void(const Rat&, const Rat&, int, int)> process = [&](const Rat& a, const Rat& b, int va, int vb) {
        const int n = va - vb;
        if (n <= 0) return;
        if (n == 1) {
            out.push_back(IsolatedRoot{p, a, b, 1});
            return;
        }
        const Rat m = (a + b) / 2;
        if (!p.eval(m).is_zero()) {
            const int vm = var(m);
            process(a, m, va, vm);
            process(m, b, vm, vb);
            return;
        }
        out.push_back(IsolatedRoot{p, m, m, 1});
        Rat w = (b - a) / 4;
        for (;;) {
            while (p.eval(m - w).is_zero() || p.eval(m + w).is_zero()) w /= 2;
            if (var(m - w) - var(m + w) == 1) break;  // the collar isolates m alone
            w /= 2;
        }
        process(a, m - w, va, var(m - w));
        process(m + w, b, var(m + w), vb);
    };
    process(-bound, bound, var(-bound), var(bound));

    std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) {
        return (x.lo + x.hi) < (y.lo + y.hi);
    });
    return out;
}

void refine(IsolatedRoot& r) {
    if (r.is_exact()) return;
    const Rat m = (r.lo + r.hi) / 2;
    const Rat fm = r.poly.eval(m);
    if (fm.is_zero()) {
        r.lo = r.hi = m;
        return;
    }
    if (sgn(r.poly.eval(r.lo)) * sgn(fm) < 0)
        r.hi = m;
    else
        r.lo = m;
}

namespace {

bool intervals_overlap(const Rat& alo, const Rat& ahi, const Rat& blo, const Rat& bhi) {
    return !(ahi < blo || bhi < alo);
}

// Refine two isolated roots known to be distinct until their intervals separate.
void separate(IsolatedRoot& a, IsolatedRoot& b) {
    while (intervals_overlap(a.lo, a.hi, b.lo, b.hi)) {
        if (a.is_exact() && b.is_exact()) {
            if (a.lo == b.lo) throw std::logic_error("separate: roots are equal");
            break;
        }
        if (!a.is_exact()) refine(a);
        if (!b.is_exact()) refine(b);
    }
}

void make_sign_definite(IsolatedRoot& r) {
    while (r.sign() == 0) {
        if (r.poly.eval(Rat(0)).is_zero()) {
            r.lo = r.hi = Rat(0);
            return;
        }
        refine(r);
    }
}

// Pin the root to an exact rational when it is one (bounded effort). In the
// primitive integer form of the factor, a rational root p/q has q dividing the
// leading coefficient; refining the interval below 1/q^2 leaves at most one
// numerator candidate per q.
void try_exact_rational(IsolatedRoot& r) {
    if (r.is_exact()) return;
    Int denom_lcm = 1;
    for (const Rat& c : r.poly.coeffs())
        denom_lcm = boost::multiprecision::lcm(denom_lcm, boost::multiprecision::denominator(c));
    const Rat lead_scaled = r.poly.lead() * Rat(denom_lcm);
    Int lead = boost::multiprecision::numerator(lead_scaled);
    if (lead < 0) lead = -lead;
    if (lead.is_zero() || lead > 1000000) return;

    std::vector<Int> divisors;
    for (Int d = 1; d * d <= lead; ++d) {
        if (!(lead % d).is_zero()) continue;
        divisors.push_back(d);
        if (d * d != lead) divisors.push_back(lead / d);
        if (divisors.size() > 128) return;
    }
    Int maxq = 1;
    for (const Int& q : divisors) maxq = std::max(maxq, q);
    while (!r.is_exact() && (r.hi - r.lo) * Rat(maxq) * Rat(maxq) >= 1) refine(r);
    if (r.is_exact()) return;
    for (const Int& q : divisors) {
        const Rat plo = r.lo * Rat(q), phi = r.hi * Rat(q);
        Int p = boost::multiprecision::numerator(plo) / boost::multiprecision::denominator(plo);
        while (Rat(p) <= plo) ++p;  // smallest integer strictly above q*lo
        if (Rat(p) >= phi) continue;
        const Rat candidate(p, q);
        if (r.poly.eval(candidate).is_zero()) {
            r.lo = r.hi = candidate;
            return;
        }
    }
}

}  // namespace

int compare_roots(IsolatedRoot& a, IsolatedRoot& b) {
    separate(a, b);
    if (a.is_exact() && b.is_exact()) return a.lo == b.lo ? 0 : (a.lo < b.lo ? -1 : 1);
    return a.hi <= b.lo ? -1 : 1;
}

namespace {

struct ExactRealRoot {
    IsolatedRoot iso;
    int multiplicity;
    int modulus_group = -1;
};

// Squared-modulus enclosure of a sign-definite (or exactly zero) root interval.
std::pair<Rat, Rat> squared_interval(const IsolatedRoot& r) {
    if (r.is_exact()) {
        const Rat m = r.lo * r.lo;
        return {m, m};
    }
    if (r.lo >= 0) return {r.lo * r.lo, r.hi * r.hi};
    return {r.hi * r.hi, r.lo * r.lo};
}

}  // namespace

RootMultiset all_roots(const MonicQ& p) {
    RootMultiset out;
    out.certified = true;
    out.tolerance_used = 0.0;

    const auto decomp = square_free_decomposition(p);

    std::vector<ExactRealRoot> reals;
    std::vector<Root> complex_entries;
    for (const auto& [factor, mult] : decomp) {
        auto isolated = isolate_real_roots(factor);
        const int n_complex_pairs = (factor.degree() - static_cast<int>(isolated.size())) / 2;
        for (auto& ir : isolated) {
            make_sign_definite(ir);
            try_exact_rational(ir);
            reals.push_back(ExactRealRoot{std::move(ir), mult});
        }
        if (n_complex_pairs > 0) {
            // Display representatives; counts and multiplicities stay exact.
            std::vector<double> low;
            for (int k = 0; k < factor.degree(); ++k)
                low.push_back(to_double(Rat(factor.coeff(k) / factor.lead())));
            const RootMultiset approx = all_roots(MonicD(low), 1e-10);
            int found = 0;
            for (const Root& r : approx.entries)
                if (r.tag == RootTag::ComplexPair && found < n_complex_pairs) {
                    Root e;
                    e.value = r.value;
                    e.imag = r.imag;
                    e.multiplicity = mult;
                    e.tag = RootTag::ComplexPair;
                    complex_entries.push_back(e);
                    ++found;
                }
            for (; found < n_complex_pairs; ++found)
                complex_entries.push_back(Root{0.0, 1.0, mult, RootTag::ComplexPair, {}, {}, -1});
        }
    }

    // Disjoint intervals across factors, ascending order.
    for (size_t i = 0; i < reals.size(); ++i)
        for (size_t j = i + 1; j < reals.size(); ++j) separate(reals[i].iso, reals[j].iso);
    std::sort(reals.begin(), reals.end(), [](const ExactRealRoot& x, const ExactRealRoot& y) {
        return (x.iso.lo + x.iso.hi) < (y.iso.lo + y.iso.hi);
    });

    // Opposite-pair structure: roots r with -r also a root are exactly the roots
    // of gcd(sf(x), sf(-x)), which divides sf and has a symmetric root set.
    // Dropping a possible zero root, it is even: pair moduli are the square roots
    // of the positive roots of its even part E(y).
    PolyQ sf = PolyQ::constant(Rat(1));
    for (const auto& [factor, mult] : decomp) sf = sf * factor;
    PolyQ sf_neg = sf.reflect().monic();
    const PolyQ pair_poly = gcd_monic(sf, sf_neg);

    PolyQ pp = pair_poly;
    if (pp.degree() >= 1 && pp.coeff(0).is_zero()) pp = divmod(pp, PolyQ::monomial(1)).first;
    std::vector<Rat> even_coeffs;
    for (int k = 0; k <= pp.degree(); k += 2) even_coeffs.push_back(pp.coeff(k));
    const PolyQ E{std::vector<Rat>(even_coeffs)};

    std::vector<IsolatedRoot> pair_moduli_sq;  // positive roots of E, ascending
    if (E.degree() >= 1)
        for (auto& yr : isolate_real_roots(E)) {
            make_sign_definite(yr);
            if (yr.sign() > 0) pair_moduli_sq.push_back(std::move(yr));
        }

    // Modulus items, keyed by squared modulus.
    struct Item {
        std::vector<size_t> members;        // indices into `reals`
        int pair_index = -1;                // >= 0: item refines through E's root
        bool is_zero = false;
    };
    std::vector<Item> items(pair_moduli_sq.size());
    for (size_t k = 0; k < items.size(); ++k) items[k].pair_index = static_cast<int>(k);

    for (size_t i = 0; i < reals.size(); ++i) {
        ExactRealRoot& r = reals[i];
        if (r.iso.is_exact() && r.iso.lo.is_zero()) {
            items.push_back(Item{{i}, -1, true});
            continue;
        }
        // r is paired iff pair_poly vanishes at r; pair_poly's roots lie among
        // sf's roots and r's interval isolates r within sf, so a count suffices.
        bool paired = false;
        if (pair_poly.degree() >= 1) {
            if (r.iso.is_exact())
                paired = pair_poly.eval(r.iso.lo).is_zero();
            else
                paired = sturm_distinct_real_roots(pair_poly, RealInterval::closed(r.iso.lo, r.iso.hi)) > 0;
        }
        if (paired) {
            // locate r^2 among E's positive roots by exact counting
            auto sq = squared_interval(r.iso);
            while (sturm_distinct_real_roots(E, RealInterval::closed(sq.first, sq.second)) > 1) {
                refine(r.iso);
                sq = squared_interval(r.iso);
            }
            const int idx = sturm_distinct_real_roots(E, RealInterval{Rat(0), sq.second, false, true}) - 1;
            items[static_cast<size_t>(idx)].members.push_back(i);
        } else {
            items.push_back(Item{{i}, -1, false});
        }
    }

    // Order items by squared modulus. Distinct items always have distinct moduli,
    // so refinement separates every pair of enclosures.
    auto item_sq = [&](const Item& it) -> std::pair<Rat, Rat> {
        if (it.is_zero) return {Rat(0), Rat(0)};
        if (it.pair_index >= 0) {
            const IsolatedRoot& y = pair_moduli_sq[static_cast<size_t>(it.pair_index)];
            return y.is_exact() ? std::pair<Rat, Rat>{y.lo, y.lo} : std::pair<Rat, Rat>{y.lo, y.hi};
        }
        return squared_interval(reals[it.members.front()].iso);
    };
    auto item_refine = [&](Item& it) -> bool {
        if (it.is_zero) return false;
        if (it.pair_index >= 0) {
            IsolatedRoot& y = pair_moduli_sq[static_cast<size_t>(it.pair_index)];
            if (y.is_exact()) return false;
            refine(y);
            return true;
        }
        IsolatedRoot& iso = reals[it.members.front()].iso;
        if (iso.is_exact()) return false;
        refine(iso);
        return true;
    };
    for (size_t i = 0; i < items.size(); ++i)
        for (size_t j = i + 1; j < items.size(); ++j) {
            auto a = item_sq(items[i]);
            auto b = item_sq(items[j]);
            while (intervals_overlap(a.first, a.second, b.first, b.second)) {
                const bool pa = item_refine(items[i]);
                const bool pb = item_refine(items[j]);
                if (!pa && !pb) throw std::logic_error("all_roots: modulus items failed to separate");
                a = item_sq(items[i]);
                b = item_sq(items[j]);
            }
        }
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        const auto sa = item_sq(a);
        const auto sb = item_sq(b);
        return sa.first + sa.second < sb.first + sb.second;
    });
    for (size_t g = 0; g < items.size(); ++g)
        for (size_t k : items[g].members) reals[k].modulus_group = static_cast<int>(g);

    for (auto& r : reals) {
        // tighten the enclosure so the display value is usable
        for (int step = 0; step < 64 && !r.iso.is_exact(); ++step) {
            const Rat width = r.iso.hi - r.iso.lo;
            if (width * Rat(1000000000000ll) <= Rat(1) + rat_abs(r.iso.lo)) break;
            refine(r.iso);
        }
        Root e;
        e.value = r.iso.midpoint();
        e.multiplicity = r.multiplicity;
        e.tag = RootTag::Real;
        if (r.iso.is_exact())
            e.exact_value = r.iso.lo;
        else
            e.enclosure = std::make_pair(r.iso.lo, r.iso.hi);
        e.modulus_group = r.modulus_group;
        out.entries.push_back(std::move(e));
    }
    for (auto& e : complex_entries) out.entries.push_back(std::move(e));
    return out;
}

HyperbolicityReport is_hyperbolic(const MonicQ& p) {
    HyperbolicityReport rep;
    rep.certified = true;
    const PolyQ sf = square_free_part(p.to_poly());
    rep.square_free_degree = sf.degree();
    rep.distinct_real_roots = sturm_distinct_real_roots(sf);
    rep.hyperbolic = (rep.distinct_real_roots == rep.square_free_degree);
    return rep;
}

HyperbolicityReport is_hyperbolic(const MonicD& p, double tol) {
    HyperbolicityReport rep;
    rep.certified = false;
    const RootMultiset roots = all_roots(p, tol);
    rep.demoted_pair = roots.demoted_pair;
    bool all_real = true;
    int distinct = 0;
    for (const auto& r : roots.entries) {
        if (r.tag == RootTag::ComplexPair)
            all_real = false;
        else
            ++distinct;
    }
    rep.distinct_real_roots = distinct;
    rep.square_free_degree = static_cast<int>(roots.entries.size());
    rep.hyperbolic = all_real;
    return rep;
}

MultiplicityPartition multiplicity_partition(const RootMultiset& r) {
    MultiplicityPartition part;
    for (const auto& e : r.entries) {
        part.push_back(e.multiplicity);
        if (e.tag == RootTag::ComplexPair) part.push_back(e.multiplicity);
    }
    std::sort(part.rbegin(), part.rend());
    return part;
}

MultiplicityPartition multiplicity_partition(const MonicQ& p) {
    MultiplicityPartition part;
    for (const auto& [factor, mult] : square_free_decomposition(p)) {
        const int n_real = sturm_distinct_real_roots(factor);
        const int n_pairs = (factor.degree() - n_real) / 2;
        for (int i = 0; i < n_real; ++i) part.push_back(mult);
        for (int i = 0; i < 2 * n_pairs; ++i) part.push_back(mult);
    }
    std::sort(part.rbegin(), part.rend());
    return part;
}

MultiplicityPartition multiplicity_partition(const MonicD& p, double tol) {
    return multiplicity_partition(all_roots(p, tol));
}

}  // namespace hypatlas
