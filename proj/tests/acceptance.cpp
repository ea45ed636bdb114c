// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "hypatlas/patterns.hpp"
#include "hypatlas/poly.hpp"
#include "hypatlas/rng.hpp"
#include "hypatlas/roots.hpp"
#include "hypatlas/search.hpp"
#include "hypatlas/strata.hpp"
#include "hypatlas/verify.hpp"

using namespace hypatlas;

namespace {

int g_failed = 0;

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Criterion(std::string n) : name(std::move(n)) {}
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
    void finish() {
        const double secs =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count() /
            1000.0;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "  (" << secs << "s)\n";
        for (const auto& n : notes) std::cout << "       - " << n << '\n';
        if (!pass) ++g_failed;
    }
};

MonicQ from_coords(std::vector<Rat> high) {
    std::vector<Rat> low(high.rbegin(), high.rend());
    return MonicQ(std::move(low));
}

}  // namespace

// 1. Landmark regression: exact coordinates, defining polynomials, stratum ids.
static void criterion_1() {
    Criterion c("1 landmark regression (exact)");

    const LandmarkPoint& t = landmark("T", 3);
    c.require(t.coords == std::vector<Rat>{Rat(1), Rat(1, 3), Rat(1, 27)}, "T coordinates");
    c.require(t.poly == expand_roots<Rat>({{Rat(-1, 3), 3}}), "T defining polynomial");
    c.require(classify(t.poly).primary().id == "19", "T classification");

    const LandmarkPoint& s = landmark("S", 3);
    c.require(s.coords == std::vector<Rat>{Rat(1), Rat(0), Rat(-4, 27)}, "S coordinates");
    c.require(s.poly == expand_roots<Rat>({{Rat(-2, 3), 2}, {Rat(1, 3), 1}}), "S defining polynomial");
    c.require(classify(s.poly).primary().id == "21", "S classification");

    const LandmarkPoint& k = landmark("cusp4", 4);
    c.require(k.poly == expand_roots<Rat>({{Rat(-1, 4), 4}}), "quadruple-root polynomial");
    c.require(k.coords == std::vector<Rat>{Rat(1), Rat(3, 8), Rat(1, 16), Rat(1, 256)}, "cusp coordinates");
    c.require(k.poly == MonicQ(std::vector<Rat>{Rat(1, 256), Rat(1, 16), Rat(3, 8), Rat(1)}),
              "cusp expansion x^4+x^3+(3/8)x^2+x/16+1/256");
    c.require(classify(k.poly).primary().id == "cusp4", "cusp classification");

    const LandmarkPoint& b = landmark("B", 4);
    c.require(b.coords == std::vector<Rat>{Rat(1), Rat(2, 5), Rat(3, 40), Rat(9, 1600)}, "B coordinates");
    const MonicQ half(std::vector<Rat>{Rat(3, 40), Rat(1, 2)});
    c.require(b.poly == expand_factors<Rat>({half, half}), "B defining polynomial (x^2+x/2+3/40)^2");
    c.require(discriminant_resultant(b.poly).is_zero(), "B discriminant vanishes exactly");
    c.require(classify(b.poly).primary().id == "B", "B classification");

    c.finish();
}

// 2. Phi characterization over 10^4 rational opposite/imaginary-pair expansions.
static void criterion_2() {
    Criterion c("2 phi characterization (10^4 exact samples)");
    long failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const Rat A = random_rational(101, idx, 0);
        const Rat u = random_rational(101, idx, 1);
        const Rat v = random_rational(101, idx, 2);
        // (x^2 + A)(x^2 + u x + v) -> (a, b, c, h) = (u, A + v, A u, A v)
        const MonicQ q = MonicQ::from_poly(PolyQ(std::vector<Rat>{A, Rat(0), Rat(1)}) *
                                           PolyQ(std::vector<Rat>{v, u, Rat(1)}));
        if (!phi(q.coeff(3), q.coeff(2), q.coeff(1), q.coeff(0)).is_zero()) ++failures;
    }
    c.require(failures == 0, "phi must vanish on every pair expansion; failures: " + std::to_string(failures));
    c.require(phi(Rat(1), Rat(2, 5), Rat(3, 40), Rat(9, 1600)) == Rat(-3, 160), "phi(B) == -3/160");
    c.finish();
}

// 3. Whitney identity at 10^3 rational points; hessian rank map on a 50x50 grid.
static void criterion_3() {
    Criterion c("3 whitney identity + hessian rank map");
    const WhitneyCheckReport w = whitney_identity_check(1000, 1);
    c.require(w.pass && w.max_residual.is_zero(), "whitney residual must be exactly zero");
    const HessianGridReport h = hessian_grid(50);
    c.require(h.pass, "hessian grid misclassifications: " + std::to_string(h.mismatches));
    c.require(h.rank1 > 0, "grid must include points on the parabola 4h=b^2");
    c.finish();
}

// 4. Resultant factorization of the quartic pair family at 100 rational points.
static void criterion_4() {
    Criterion c("4 resultant factorization (100 exact samples)");
    const ResultantFamilyReport r = resultant_family_check(100, 2);
    c.require(r.vanishing_agree, "vanishing loci must agree");
    c.require(r.ratio_constant && r.ratio.has_value(), "ratio must be one constant");
    if (r.ratio) c.require(*r.ratio == Rat(1), "ratio equals 1, got " + to_string(*r.ratio));
    c.finish();
}

// 5. Jacobian ranks d-1 with exact row identities, 100 trials per degree 3..8.
static void criterion_5() {
    Criterion c("5 jacobian ranks, degrees 3..8 x 100");
    const JacobianSweepReport r = jacobian_sweep(3, 8, 100, 7);
    c.require(r.rank_failures == 0, "rank failures: " + std::to_string(r.rank_failures));
    c.require(r.identity_failures == 0, "identity failures: " + std::to_string(r.identity_failures));
    c.finish();
}

// 6. Fourth-order tangency of the slice boundary and the pair-locus slice.
static void criterion_6() {
    Criterion c("6 tangency point and contact order");
    const CurvePolyline pcal = emit_curve(CurveId::Pcal4, std::make_pair(Rat(1, 4), Rat(1, 2)), 2);
    const auto& pt = pcal.points.front();
    c.require(pt[0] == Rat(1, 8) && pt[1] == Rat(-1, 16) && pt[2] == Rat(-3, 256),
              "pair-locus point at u=1/4 must be (1/8, -1/16, -3/256)");
    c.require(((pt[0] - 2 * pt[1]) * (pt[0] - 2 * pt[1]) + pt[1]).is_zero(), "(b-2c)^2 + c = 0 exactly");
    c.require(pt[2] == pt[1] * (pt[0] - pt[1]), "h = c(b-c) exactly");

    // contact order of the double-root slice curve against h = c(b0 - c) at
    // the tangency parameter t0 = -1/4 (slice a=1, b=1/8): the difference
    // phi(t) = h(t) - E(c(t)) must vanish to fourth order.
    const Rat b0(1, 8), t0(-1, 4);
    auto difference = [&](const Rat& t) {
        const Rat cc = Rat(-4) * t * t * t - 3 * t * t - 2 * b0 * t;
        const Rat hh = Rat(3) * t * t * t * t + 2 * t * t * t + b0 * t * t;
        return hh - cc * (b0 - cc);
    };
    c.require(difference(t0).is_zero(), "curves meet at the tangency parameter");
    const Rat step(1, 1000);
    for (const Rat& s : {step, -step}) {
        const Rat d = rat_abs(difference(t0 + s));
        const Rat s4 = s * s * s * s;
        c.require(d * 2 > s4 && d < s4 * 2, "order-4 bracket s^4/2 < |diff| < 2 s^4 at step " + to_string(s));
    }
    // order estimate from halving the step
    const double d1 = to_double(rat_abs(difference(t0 + step)));
    const double d2 = to_double(rat_abs(difference(t0 + step / 2)));
    const double order = std::log2(d1 / d2);
    c.require(order > 3.5 && order < 4.5, "contact order estimate " + std::to_string(order));
    c.finish();
}

// 7. Cubic stratum sweep: >= 10^4 exact classifications on the a=1 slice plus
// the a=0 slice; all strata hit, every (SP, MO) pair equal to the catalog.
static void criterion_7() {
    Criterion c("7 cubic stratum sweep (>= 10^4 exact points)");
    long n_points = 0;
    std::set<std::string> seen;
    auto visit = [&](const MonicQ& p) {
        ++n_points;
        const Classification cls = classify(p);
        const StratumLabel& lab = cls.primary();
        if (!lab.id) {
            c.require(lab.hyperbolic == HypPosition::Outside, "unlabeled point must lie outside");
            return;
        }
        const StratumInfo* info = find_stratum(3, *lab.id);
        if (!info) {
            c.require(false, "unknown stratum id " + *lab.id);
            return;
        }
        seen.insert(*lab.id);
        if (lab.sp.str() != info->spaz)
            c.require(false, "sign pattern mismatch in stratum " + *lab.id + ": " + lab.sp.str());
        if (!lab.mo || lab.mo->str() != info->moae)
            c.require(false, "moduli order mismatch in stratum " + *lab.id);
        if (lab.partition != info->partition) c.require(false, "partition mismatch in stratum " + *lab.id);
    };

    for (int i = -50; i <= 50; ++i)
        for (int j = -50; j <= 50; ++j) visit(from_coords({Rat(1), Rat(i, 25), Rat(j, 25)}));
    for (int k = -100; k <= 45; ++k) {
        const Rat xi(k, 60);
        visit(from_coords({Rat(1), Rat(-3) * xi * xi - 2 * xi, Rat(2) * xi * xi * xi + xi * xi}));
    }
    for (int k = -60; k <= -1; ++k) visit(from_coords({Rat(1), Rat(k, 20), Rat(k, 20)}));
    for (int k = 1; k <= 9; ++k) visit(from_coords({Rat(1), Rat(k, 40), Rat(0)}));
    for (int k = -9; k <= -1; ++k) visit(from_coords({Rat(1), Rat(0), Rat(k, 70)}));
    // interior representatives of the thin open regions (root triples, sum -1)
    visit(expand_roots<Rat>({{Rat(-1, 10), 1}, {Rat(-3, 10), 1}, {Rat(-6, 10), 1}}));
    visit(expand_roots<Rat>({{Rat(1, 10), 1}, {Rat(-4, 10), 1}, {Rat(-7, 10), 1}}));
    visit(expand_roots<Rat>({{Rat(9, 20), 1}, {Rat(-7, 10), 1}, {Rat(-3, 4), 1}}));
    visit(expand_roots<Rat>({{Rat(3, 2), 1}, {Rat(-11, 10), 1}, {Rat(-7, 5), 1}}));

    std::set<std::string> expected_a1, seen_a1;
    for (const auto& info : stratum_catalog(3))
        if (info.slice == 1) expected_a1.insert(info.id);
    for (const auto& id : seen)
        if (expected_a1.count(id)) seen_a1.insert(id);
    c.require(seen_a1 == expected_a1,
              "a=1 sweep must hit all 22 strata; hit " + std::to_string(seen_a1.size()));

    std::set<std::string> seen_before = seen;
    for (int i = -20; i <= 20; ++i)
        for (int j = -20; j <= 20; ++j) visit(from_coords({Rat(0), Rat(i, 8), Rat(j, 8)}));
    for (int k = -12; k <= 12; ++k) {
        const Rat t(k, 6);
        visit(from_coords({Rat(0), Rat(-3) * t * t, Rat(2) * t * t * t}));
    }
    std::set<std::string> expected_a0;
    for (const auto& info : stratum_catalog(3))
        if (info.slice == 0) expected_a0.insert(info.id);
    for (const auto& id : expected_a0)
        if (!seen.count(id)) c.require(false, "a=0 variant not hit: " + id);

    c.require(n_points >= 10000, "grid size " + std::to_string(n_points));
    c.notes.push_back("classified " + std::to_string(n_points) + " exact points");
    c.finish();
}

// 8. Descartes equalities over 10^5 sampled hyperbolic polynomials per degree.
static void criterion_8() {
    Criterion c("8 descartes equalities, degrees 2..8 x 10^5");
    for (int d = 2; d <= 8; ++d) {
        const DescartesSweepReport r = descartes_sweep(d, 100000, 31);
        if (!r.pass)
            c.require(false, "degree " + std::to_string(d) + ": " + std::to_string(r.violations) + " violations");
    }
    c.finish();
}

// 9. Canonicity/rigidity tables at n = 10^5 for degrees 2, 3 and 4 (a>0).
static void criterion_9() {
    Criterion c("9 canonicity/rigidity tables at n = 10^5");

    SampleConfig d2;
    d2.degree = 2;
    d2.n = 100000;
    d2.seed = 5;
    const IncidenceTable t2 = build_incidence(d2);
    const ExpectationCheck c2 = check_expectations(t2);
    for (const auto& m : c2.mismatches) c.require(false, "degree 2: " + m);
    c.require(t2.sp_to_mos.size() == 4, "degree 2 must realize all four sign patterns");

    SampleConfig d3;
    d3.degree = 3;
    d3.n = 100000;
    d3.seed = 5;
    const IncidenceTable t3 = build_incidence(d3);
    const ExpectationCheck c3 = check_expectations(t3);
    for (const auto& m : c3.mismatches) c.require(false, "degree 3: " + m);

    SampleConfig d4;
    d4.degree = 4;
    d4.n = 100000;
    d4.seed = 5;
    d4.restrict_a_positive = true;
    const IncidenceTable t4 = build_incidence(d4);
    const ExpectationCheck c4 = check_expectations(t4);
    for (const auto& m : c4.mismatches) c.require(false, "degree 4 (a>0): " + m);

    // the three non-canonical patterns each observe at least two orders
    for (const std::string& sp : {"(+,+,+,-,-)", "(+,+,-,-,-)", "(+,+,-,-,+)"}) {
        const auto it = t4.sp_to_mos.find(sp);
        if (it == t4.sp_to_mos.end())
            c.require(false, "pattern not sampled: " + sp);
        else
            c.require(it->second.size() >= 2, sp + " must observe at least two orders");
    }
    c.finish();
}

// 10. Canonical order of the degree-8 example pattern.
static void criterion_10() {
    Criterion c("10 canonical order golden value");
    const auto sp = SignPattern::parse("(+,-,+,-,+,+,-,-,+)");
    c.require(sp.has_value(), "pattern parse");
    if (sp) c.require(canonical_mo(*sp).str() == "P<N<P<N<P<P<P<P", "canonical order of the degree-8 pattern");
    c.finish();
}

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failed == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failed << " criteria failed\n";
    return 1;
}
