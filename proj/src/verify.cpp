#include "hypatlas/verify.hpp"

#include <algorithm>
#include <set>

#include "hypatlas/rng.hpp"
#include "hypatlas/strata.hpp"

namespace hypatlas {

Rat random_rational(std::uint64_t seed, std::uint64_t index, int stream, int height) {
    SplitMix64 rng = stream_rng(seed, index * 16 + static_cast<std::uint64_t>(stream));
    const auto num = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * height + 1))) - height;
    const auto den = static_cast<long>(rng.below(static_cast<std::uint64_t>(height))) + 1;
    return Rat(num, den);
}

JacobianReport jacobian_rank(const MonicQ& w, const Rat& v) {
    JacobianReport rep;
    const int d = w.degree() + 2;
    rep.degree = d;
    rep.v = v;
    rep.w_low = w.low_coeffs();

    const Rat wv = w.eval(v);
    const Rat wnv = w.eval(-v);
    rep.hypothesis_ok = !v.is_zero() && !wv.is_zero() && !wnv.is_zero();

    // a_j = c_{j-2} - v^2 c_j with c_{d-2} = 1; variables are (c_0..c_{d-3}, v).
    MatQ jt(d - 1, d);  // row i < d-2: da/dc_i; last row: da/dv
    const Rat v2 = v * v;
    for (int i = 0; i <= d - 3; ++i) {
        jt.at(i, i) = -v2;
        jt.at(i, i + 2) = Rat(1);
    }
    for (int j = 0; j <= d - 1; ++j) jt.at(d - 2, j) = Rat(-2) * v * w.coeff(j);
    rep.rank = exact_rank(jt);

    // U0 = -2v sum_{j even} c_j v^j, U1 = -2v sum_{j odd} c_j v^{j-1}
    rep.u0 = Rat(0);
    rep.u1 = Rat(0);
    Rat pw(1);
    for (int j = 0; j <= d - 2; ++j) {
        if (j % 2 == 0)
            rep.u0 += w.coeff(j) * pw;
        else
            rep.u1 += w.coeff(j) * pw;
        if (j % 2 == 1) pw *= v2;
    }
    rep.u0 *= Rat(-2) * v;
    rep.u1 *= Rat(-2) * v;

    const Rat plus = rep.u0 + v * rep.u1;
    const Rat minus = rep.u0 - v * rep.u1;
    rep.identity_ok = (plus == Rat(-2) * v * wv) && (minus == Rat(-2) * v * wnv);
    rep.witness = !plus.is_zero() ? "U0+vU1" : (!minus.is_zero() ? "U0-vU1" : "none");
    rep.certified = rep.hypothesis_ok && rep.identity_ok && rep.rank == d - 1;
    return rep;
}

Rat vandermonde_det(const std::vector<Rat>& params) {
    const int s = static_cast<int>(params.size());
    MatQ m(s, s);
    for (int i = 0; i < s; ++i) {
        Rat pw(1);
        for (int j = 0; j < s; ++j) {
            m.at(i, j) = pw;
            pw *= params[static_cast<size_t>(i)];
        }
    }
    return exact_det(m);
}

namespace {

TransversalityReport report_from_params(std::vector<Rat> params) {
    TransversalityReport rep;
    rep.s = static_cast<int>(params.size());
    rep.params = std::move(params);
    rep.det = vandermonde_det(rep.params);
    rep.independent = !rep.det.is_zero();
    return rep;
}

}  // namespace

TransversalityReport transversality_check(const std::vector<Rat>& v_values) {
    std::vector<Rat> params;
    std::set<Rat> seen;
    for (const Rat& v : v_values) {
        if (v <= 0) throw std::invalid_argument("transversality_check: v values must be positive");
        if (!seen.insert(v).second) throw std::invalid_argument("transversality_check: repeated v value");
        params.push_back(v * v);
    }
    return report_from_params(std::move(params));
}

TransversalityReport transversality_mixed(const std::vector<Rat>& v_values, const std::vector<Rat>& a_values) {
    std::vector<Rat> params;
    for (const Rat& v : v_values) params.push_back(-(v * v));
    for (const Rat& a : a_values) params.push_back(a);
    std::set<Rat> seen;
    for (const Rat& t : params)
        if (!seen.insert(t).second) throw std::invalid_argument("transversality_mixed: coincident parameter values");
    return report_from_params(std::move(params));
}

HessianReport hessian_rank(const Rat& a, const Rat& b, const Rat& c, const Rat& h) {
    HessianReport rep;
    rep.point = {a, b, c, h};
    rep.hessian = {{{Rat(2) * h, -c, -b, Rat(2) * a},
                    {-c, Rat(0), -a, Rat(0)},
                    {-b, -a, Rat(2), Rat(0)},
                    {Rat(2) * a, Rat(0), Rat(0), Rat(0)}}};
    MatQ m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = rep.hessian[static_cast<size_t>(i)][static_cast<size_t>(j)];
    rep.rank = exact_rank(m);
    return rep;
}

WhitneyCheckReport whitney_identity_check(int n_samples, std::uint64_t seed) {
    WhitneyCheckReport rep;
    rep.n_samples = n_samples;
    rep.seed = seed;
    rep.max_residual = Rat(0);
    for (int i = 0; i < n_samples; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const Rat a = random_rational(seed, idx, 0);
        const Rat b = random_rational(seed, idx, 1);
        const Rat c = random_rational(seed, idx, 2);
        const Rat h = random_rational(seed, idx, 3);
        const auto [omega, rho] = whitney_coordinates(a, b, c, h);
        const Rat residual = rat_abs(phi(a, b, c, h) - (omega * omega - rho * a * a));
        rep.max_residual = std::max(rep.max_residual, residual);
    }
    rep.pass = rep.max_residual.is_zero();
    return rep;
}

ResultantFamilyReport resultant_family_check(int n_samples, std::uint64_t seed) {
    ResultantFamilyReport rep;
    rep.n_samples = n_samples;
    rep.seed = seed;
    rep.vanishing_agree = true;
    rep.ratio_constant = true;
    for (int i = 0; i < n_samples; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const Rat u = random_rational(seed, idx, 0);
        const Rat w = random_rational(seed, idx, 1);
        const MonicQ quartic = expand(FactoredForm{EvenTimesQuadraticForm{u, w}});
        const Rat res = discriminant_resultant(quartic);
        const Rat f1 = u * u + u + w, f2 = u * u - u + w;
        const Rat target = Rat(-4) * u * u * f1 * f1 * f2 * f2 * (Rat(4) * w - 1);
        if (res.is_zero() != target.is_zero()) rep.vanishing_agree = false;
        if (target.is_zero()) {
            ++rep.zero_cases;
            continue;
        }
        const Rat ratio = res / target;
        if (!rep.ratio)
            rep.ratio = ratio;
        else if (*rep.ratio != ratio)
            rep.ratio_constant = false;
    }
    rep.pass = rep.vanishing_agree && rep.ratio_constant && rep.ratio.has_value();
    return rep;
}

JacobianSweepReport jacobian_sweep(int degree_lo, int degree_hi, int trials, std::uint64_t seed) {
    JacobianSweepReport rep;
    rep.degree_lo = degree_lo;
    rep.degree_hi = degree_hi;
    rep.trials = trials;
    rep.seed = seed;
    std::uint64_t idx = 0;
    for (int d = degree_lo; d <= degree_hi; ++d) {
        for (int t = 0; t < trials; ++t) {
            // rejection sampling of hypothesis-satisfying (W, v)
            for (;;) {
                ++idx;
                std::vector<Rat> low;
                for (int j = 0; j < d - 2; ++j) low.push_back(random_rational(seed, idx, j));
                const Rat v = random_rational(seed, idx, d);
                const MonicQ w{std::vector<Rat>(low)};
                if (v.is_zero() || w.eval(v).is_zero() || w.eval(-v).is_zero()) continue;
                const JacobianReport r = jacobian_rank(w, v);
                if (r.rank != d - 1) ++rep.rank_failures;
                if (!r.identity_ok) ++rep.identity_failures;
                break;
            }
        }
    }
    rep.pass = rep.rank_failures == 0 && rep.identity_failures == 0;
    return rep;
}

HessianGridReport hessian_grid(int n) {
    HessianGridReport rep;
    rep.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Rat b(i - n / 2, 4);
            const Rat h(j - n / 2, 16);
            const HessianReport hr = hessian_rank(Rat(0), b, Rat(0), h);
            const bool on_parabola = (Rat(4) * h == b * b);
            const int expected = on_parabola ? 1 : 2;
            if (hr.rank == 1) ++rep.rank1;
            if (hr.rank == 2) ++rep.rank2;
            if (hr.rank != expected) ++rep.mismatches;
        }
    }
    rep.pass = rep.mismatches == 0;
    return rep;
}

TransversalitySweepReport transversality_sweep(int pool_size, std::uint64_t seed) {
    TransversalitySweepReport rep;
    rep.pool_size = pool_size;
    rep.seed = seed;
    std::vector<Rat> pool;
    for (int i = 0; i < pool_size; ++i) pool.push_back(random_rational(seed, static_cast<std::uint64_t>(i), 0, 20));
    // plant repeats so both sides of the equivalence are exercised
    if (pool_size >= 4) pool[static_cast<size_t>(pool_size - 1)] = pool[0];
    if (pool_size >= 6) pool[static_cast<size_t>(pool_size - 2)] = pool[1];

    const std::uint64_t total = 1ull << pool_size;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        std::vector<Rat> params;
        for (int i = 0; i < pool_size; ++i)
            if (mask & (1ull << i)) params.push_back(pool[static_cast<size_t>(i)]);
        std::set<Rat> uniq(params.begin(), params.end());
        const bool distinct = uniq.size() == params.size();
        const bool indep = !vandermonde_det(params).is_zero();
        ++rep.subsets_checked;
        if (distinct != indep) ++rep.failures;
    }
    rep.pass = rep.failures == 0;
    return rep;
}

}  // namespace hypatlas
