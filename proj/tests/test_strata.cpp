#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hypatlas/rng.hpp"
#include "hypatlas/strata.hpp"

using namespace hypatlas;

namespace {

MonicQ mq(std::initializer_list<Rat> low) { return MonicQ(std::vector<Rat>(low)); }

MonicQ from_coords(std::initializer_list<Rat> high) {
    std::vector<Rat> v(high);
    std::vector<Rat> low(v.rbegin(), v.rend());
    return MonicQ(std::move(low));
}

}  // namespace

TEST_CASE("phi values") {
    CHECK(phi(Rat(1), Rat(2), Rat(1), Rat(1)).is_zero());
    for (long b = -3; b <= 3; ++b)
        for (long h = -3; h <= 3; ++h) CHECK(phi(Rat(0), Rat(b), Rat(0), Rat(h)).is_zero());
    CHECK(phi(Rat(1), Rat(2, 5), Rat(3, 40), Rat(9, 1600)) == Rat(-3, 160));
}

TEST_CASE("whitney coordinates and the umbrella identity") {
    const auto [w0, r0] = whitney_coordinates(Rat(0), Rat(7), Rat(5), Rat(2));
    CHECK(w0 == Rat(5));
    CHECK(r0 == Rat(49, 4) - Rat(2));
    const auto [w1, r1] = whitney_coordinates(Rat(1), Rat(2), Rat(1), Rat(1));
    CHECK(w1.is_zero());
    CHECK(r1.is_zero());
    for (int trial = 0; trial < 500; ++trial) {
        SplitMix64 rng = stream_rng(3, static_cast<std::uint64_t>(trial));
        auto draw = [&] {
            return Rat(static_cast<long>(rng.below(41)) - 20, static_cast<long>(rng.below(9)) + 1);
        };
        const Rat a = draw(), b = draw(), c = draw(), h = draw();
        const auto [omega, rho] = whitney_coordinates(a, b, c, h);
        CHECK(phi(a, b, c, h) == omega * omega - rho * a * a);
    }
}

TEST_CASE("phi degenerates to c^2 on the a=0 slice") {
    for (long b = -4; b <= 4; ++b)
        for (long c = -4; c <= 4; ++c)
            for (long h = -4; h <= 4; ++h) CHECK(phi(Rat(0), Rat(b), Rat(c), Rat(h)) == Rat(c) * Rat(c));
}

TEST_CASE("classify: the degree-2 opposite-pair ray") {
    const Classification cls = classify(from_coords({Rat(0), Rat(-1)}));
    REQUIRE_FALSE(cls.ambiguous());
    const StratumLabel& lab = cls.primary();
    CHECK(lab.id == "E2");
    CHECK(lab.sp.str() == "(+,0,-)");
    REQUIRE(lab.mo);
    CHECK(lab.mo->str() == "P=N");
    CHECK(lab.in_E);
    CHECK_FALSE(lab.in_Delta);
    CHECK(lab.hyperbolic == HypPosition::Interior);
}

TEST_CASE("classify: open segment of the cubic pair line") {
    const Classification cls = classify(from_coords({Rat(1), Rat(-1, 4), Rat(-1, 4)}));
    const StratumLabel& lab = cls.primary();
    CHECK(lab.id == "13");
    CHECK(lab.sp.str() == "(+,+,-,-)");
    CHECK(lab.mo->str() == "P=N<N");
    CHECK(lab.in_E);
}

TEST_CASE("classify: the triple-root vertex") {
    const Classification cls = classify(from_coords({Rat(1), Rat(1, 3), Rat(1, 27)}));
    const StratumLabel& lab = cls.primary();
    CHECK(lab.id == "19");
    CHECK(lab.partition == MultiplicityPartition{3});
    CHECK(lab.hyperbolic == HypPosition::Boundary);
    CHECK(lab.in_Delta);
}

TEST_CASE("classify: the isolated double-complex-pair point") {
    const Classification cls = classify(from_coords({Rat(1), Rat(2, 5), Rat(3, 40), Rat(9, 1600)}));
    const StratumLabel& lab = cls.primary();
    CHECK(lab.hyperbolic == HypPosition::Outside);
    CHECK(lab.partition == MultiplicityPartition{2, 2});
    CHECK(lab.in_Delta);
    CHECK_FALSE(lab.in_E);
    CHECK_FALSE(lab.in_F);
    CHECK_FALSE(lab.in_G);
    CHECK(lab.id == "B");
    CHECK_FALSE(lab.mo.has_value());
}

TEST_CASE("classify: a<0 cubics normalize onto the a=1 catalog") {
    // reflect (1, -1/4, -1/4): the dilatation with t = -1 gives (-1, -1/4, 1/4)
    const Classification cls = classify(from_coords({Rat(-1), Rat(-1, 4), Rat(1, 4)}));
    const StratumLabel& lab = cls.primary();
    CHECK(lab.id == "13");
    CHECK(lab.sp.str() == "(+,-,-,+)");
    CHECK(lab.mo->str() == "P=N<P");
    CHECK(lab.in_E);
}

TEST_CASE("classify: rescaled points share the stratum id") {
    // dilatation t = 2 applied to the point T
    const MonicQ t2 = from_coords({Rat(1), Rat(1, 3), Rat(1, 27)}).dilate(Rat(2));
    CHECK(classify(t2).primary().id == "19");
}

TEST_CASE("landmarks") {
    const LandmarkPoint& t = landmark("T", 3);
    CHECK(t.coords == std::vector<Rat>{Rat(1), Rat(1, 3), Rat(1, 27)});
    CHECK(t.poly == from_coords({Rat(1), Rat(1, 3), Rat(1, 27)}));

    const LandmarkPoint& b = landmark("B", 4);
    CHECK(b.coords == std::vector<Rat>{Rat(1), Rat(2, 5), Rat(3, 40), Rat(9, 1600)});
    const MonicQ bsq = expand_factors<Rat>({mq({Rat(3, 40), Rat(1, 2)}), mq({Rat(3, 40), Rat(1, 2)})});
    CHECK(b.poly == bsq);

    const LandmarkPoint& n = landmark("N", 4);
    CHECK(n.coords == std::vector<Rat>{Rat(0), Rat(1), Rat(0), Rat(1, 4)});
    CHECK(n.in_F);

    const LandmarkPoint& s = landmark("S", 3);
    CHECK(s.coords == std::vector<Rat>{Rat(1), Rat(0), Rat(-4, 27)});
    const MonicQ spoly = expand_roots<Rat>({{Rat(-2, 3), 2}, {Rat(1, 3), 1}});
    CHECK(s.poly == spoly);

    CHECK_THROWS(landmark("X", 3));
}

TEST_CASE("landmark catalog coheres with classification") {
    for (const auto& l : all_landmarks()) {
        const Classification cls = classify(l.poly);
        const StratumLabel& lab = cls.primary();
        CHECK(lab.partition == l.partition);
        CHECK(lab.in_E == l.in_E);
        CHECK(lab.in_F == l.in_F);
        CHECK(lab.in_G == l.in_G);
        CHECK(lab.in_Delta == l.in_Delta);
        if (l.degree == 4) CHECK(lab.id == l.name);
    }
}

TEST_CASE("etilde membership witnesses") {
    // (x^2 - 1)(x^2 + x + 3)
    const MonicQ e = expand_factors<Rat>({expand_roots<Rat>({{Rat(1), 1}, {Rat(-1), 1}}), mq({Rat(3), Rat(1)})});
    const EtildeMembership me = etilde_membership(e);
    CHECK(me.in_E);
    CHECK_FALSE(me.in_F);
    CHECK_FALSE(me.in_G);
    REQUIRE(me.phi_vanishes.has_value());
    CHECK(*me.phi_vanishes);
    REQUIRE(me.e_witnesses.size() == 1);
    CHECK(me.e_witnesses[0] == doctest::Approx(1.0));

    // (x^2 + 1)(x^2 + x + 1)
    const MonicQ f = expand_factors<Rat>({mq({Rat(1), Rat(0)}), mq({Rat(1), Rat(1)})});
    const EtildeMembership mf = etilde_membership(f);
    CHECK(mf.in_F);
    CHECK_FALSE(mf.in_E);
    CHECK(*mf.phi_vanishes);

    // x^4 + x^3 + x^2/2
    const MonicQ g = mq({Rat(0), Rat(0), Rat(1, 2), Rat(1)});
    const EtildeMembership mg = etilde_membership(g);
    CHECK(mg.in_G);
    CHECK(*mg.phi_vanishes);
}

TEST_CASE("phi characterizes the degree-4 union locus") {
    int nonzero_phi = 0;
    for (int trial = 0; trial < 300; ++trial) {
        SplitMix64 rng = stream_rng(17, static_cast<std::uint64_t>(trial));
        auto draw = [&] {
            return Rat(static_cast<long>(rng.below(21)) - 10, static_cast<long>(rng.below(5)) + 1);
        };
        // expansions of (x^2 + A)(x^2 + u x + v) always satisfy phi = 0
        const Rat A = draw(), u = draw(), v = draw();
        const Rat a = u, b = A + v, c = A * u, h = A * v;
        CHECK(phi(a, b, c, h).is_zero());

        // solving phi = 0 for h lands in the union locus
        const Rat a2 = draw(), b2 = draw(), c2 = draw();
        if (a2.is_zero()) continue;
        const Rat h2 = -(c2 - a2 * b2) * c2 / (a2 * a2);
        const MonicQ q = from_coords({a2, b2, c2, h2});
        CHECK(etilde_membership(q).any());
        ++nonzero_phi;
    }
    CHECK(nonzero_phi > 100);
}

TEST_CASE("curve: triple-root projection and its cusp") {
    const CurvePolyline s4 = emit_curve(CurveId::S4, std::make_pair(Rat(-1, 4), Rat(0)), 2);
    CHECK(s4.points.front() == std::vector<Rat>{Rat(3, 8), Rat(1, 16), Rat(1, 256)});
    const CurvePolyline full = emit_curve(CurveId::S4, std::nullopt, 64);
    REQUIRE(full.singular_points.size() == 1);
    CHECK(full.singular_points[0].kind == SingularPoint::Kind::Cusp);
    CHECK(full.singular_points[0].param == doctest::Approx(-0.25));
}

TEST_CASE("curve: cubic boundary cusp") {
    const CurvePolyline c3 = emit_curve(CurveId::C3, std::make_pair(Rat(-1, 3), Rat(1, 3)), 3);
    CHECK(c3.points.front() == std::vector<Rat>{Rat(1, 3), Rat(1, 27)});
    REQUIRE_FALSE(c3.singular_points.empty());
    CHECK(c3.singular_points[0].point[0] == doctest::Approx(1.0 / 3.0));
    CHECK(c3.singular_points[0].point[1] == doctest::Approx(1.0 / 27.0));
}

TEST_CASE("curve: pair-locus parabola meets the slice parabola at the tangency point") {
    const CurvePolyline pcal = emit_curve(CurveId::Pcal4, std::make_pair(Rat(1, 4), Rat(1, 2)), 2);
    const auto& pt = pcal.points.front();
    CHECK(pt[0] == Rat(1, 8));
    CHECK(pt[1] == Rat(-1, 16));
    CHECK(pt[2] == Rat(-3, 256));
    // (b - 2c)^2 + c = 0 along the whole curve
    const CurvePolyline sweep = emit_curve(CurveId::Pcal4, std::nullopt, 101);
    for (const auto& p : sweep.points) {
        const Rat r = (p[0] - 2 * p[1]) * (p[0] - 2 * p[1]) + p[1];
        CHECK(r.is_zero());
        CHECK(p[2] == p[1] * (p[0] - p[1]));  // on the h = c(b-c) slice surface
    }
}

TEST_CASE("curve: two-double-root ray and its continuation") {
    const CurvePolyline lr = emit_curve(CurveId::LR4, std::make_pair(Rat(1, 4), Rat(1, 4)), 2);
    CHECK(lr.points.front() == std::vector<Rat>{Rat(1, 4), Rat(0), Rat(0)});
    for (const auto& p : emit_curve(CurveId::LR4, std::nullopt, 33).points) CHECK(p[2] == p[1] * p[1]);
    const CurvePolyline li = emit_curve(CurveId::LI4, std::make_pair(Rat(2, 5), Rat(2, 5)), 2);
    CHECK(li.points.front() == std::vector<Rat>{Rat(2, 5), Rat(3, 40), Rat(9, 1600)});
}

TEST_CASE("curve: quartic slice double-root curve, cusps and self-intersection") {
    const CurvePolyline d = emit_curve(CurveId::DiscSlice, std::make_pair(Rat(-1), Rat(1)), 64, Rat(1), Rat(0));
    REQUIRE(d.singular_points.size() == 3);
    std::multiset<std::string> kinds;
    for (const auto& s : d.singular_points) kinds.insert(s.kind == SingularPoint::Kind::Cusp ? "cusp" : "self");
    CHECK(kinds == std::multiset<std::string>{"cusp", "cusp", "self"});
    for (const auto& s : d.singular_points) {
        if (s.kind == SingularPoint::Kind::SelfIntersection) {
            CHECK(s.point[0] == doctest::Approx(-0.125));
            CHECK(s.point[1] == doctest::Approx(1.0 / 64.0));
        }
    }
    // every emitted sample really is a double-root polynomial of the slice
    for (size_t i = 0; i < d.params.size(); i += 9) {
        const Rat& t = d.params[i];
        const Rat c = d.points[i][0], h = d.points[i][1];
        const MonicQ q = from_coords({Rat(1), Rat(0), c, h});
        CHECK(q.eval(t).is_zero());
        CHECK(q.to_poly().derivative().eval(t).is_zero());
    }
}

TEST_CASE("curve: even slice with b=-1 has the two-double-root crossing on the axis") {
    const CurvePolyline d = emit_curve(CurveId::EvenDiscSlice, std::nullopt, 33, Rat(0), Rat(-1));
    bool found = false;
    for (const auto& s : d.singular_points)
        if (s.kind == SingularPoint::Kind::SelfIntersection) {
            found = true;
            CHECK(s.point[0] == doctest::Approx(0.0));
            CHECK(s.point[1] == doctest::Approx(0.25));
        }
    CHECK(found);
}

TEST_CASE("curve: etilde slices") {
    const CurvePolyline e = emit_curve(CurveId::EtildeSlice, std::make_pair(Rat(-1), Rat(1)), 65, Rat(1), Rat(1, 8));
    for (size_t i = 0; i < e.params.size(); ++i) {
        const Rat c = e.points[i][0], h = e.points[i][1];
        CHECK(h == c * (Rat(1, 8) - c));
    }
    const CurvePolyline e0 = emit_curve(CurveId::EtildeSlice, std::make_pair(Rat(-1), Rat(1)), 5, Rat(0), Rat(2));
    for (const auto& p : e0.points) CHECK(p[0].is_zero());
}

TEST_CASE("curve: domain clamping and empty intersections") {
    CHECK_THROWS(emit_curve(CurveId::E3, std::make_pair(Rat(-5), Rat(-1)), 8));
    const CurvePolyline e3 = emit_curve(CurveId::E3, std::make_pair(Rat(-2), Rat(1)), 5);
    CHECK(e3.params.front() == Rat(0));
    for (const auto& p : e3.points) CHECK(p[0] == p[1]);
    CHECK_THROWS(emit_curve(CurveId::C3, std::nullopt, 1));
}

TEST_CASE("float classification widens near a boundary") {
    const Classification cls = classify(MonicD(std::vector<double>{-1.0, 1e-10}), 1e-8);
    CHECK_FALSE(cls.certified);
    CHECK(cls.ambiguous());
    std::set<std::string> ids;
    for (const auto& lab : cls.labels)
        if (lab.id) ids.insert(*lab.id);
    CHECK(ids.count("E2") == 1);
    CHECK(ids.count("a>0,b<0") == 1);
    CHECK(ids.count("a<0,b<0") == 1);
}

TEST_CASE("float classification away from boundaries is unambiguous") {
    const Classification cls = classify(MonicD(std::vector<double>{-1.0, 0.5}), 1e-8);
    CHECK_FALSE(cls.ambiguous());
    CHECK(cls.primary().id == "a>0,b<0");
    CHECK(cls.primary().mo->str() == "P<N");
}

TEST_CASE("d=3 stratum sweep: a compact grid hits every a=1 stratum with matching pairs") {
    std::set<std::string> seen;
    auto visit = [&](const MonicQ& p) {
        const Classification cls = classify(p);
        const StratumLabel& lab = cls.primary();
        if (!lab.id) {
            CHECK(lab.hyperbolic == HypPosition::Outside);
            return;
        }
        seen.insert(*lab.id);
        const StratumInfo* info = find_stratum(3, *lab.id);
        REQUIRE(info != nullptr);
        CHECK(lab.sp.str() == info->spaz);
        REQUIRE(lab.mo.has_value());
        CHECK(lab.mo->str() == info->moae);
        CHECK(lab.partition == info->partition);
        CHECK(lab.hyperbolic == info->pos);
        CHECK(lab.in_E == info->in_E);
        CHECK(lab.in_G == info->in_G);
        CHECK(lab.in_Delta == info->in_Delta);
    };

    // lattice over the a=1 slice
    for (int i = -12; i <= 12; ++i)
        for (int j = -12; j <= 12; ++j) visit(from_coords({Rat(1), Rat(i, 8), Rat(j, 8)}));
    // boundary curve samples (double root xi, twelfths to land on the vertices)
    for (int k = -20; k <= 9; ++k) {
        const Rat xi(k, 12);
        visit(from_coords({Rat(1), Rat(-3) * xi * xi - 2 * xi, Rat(2) * xi * xi * xi + xi * xi}));
    }
    // pair line b = c
    for (int k = -40; k <= -1; ++k) visit(from_coords({Rat(1), Rat(k, 10), Rat(k, 10)}));
    // coefficient axes inside the domain
    for (int k = 1; k <= 4; ++k) visit(from_coords({Rat(1), Rat(k, 20), Rat(0)}));
    for (int k = -4; k <= -1; ++k) visit(from_coords({Rat(1), Rat(0), Rat(k, 30)}));
    // one interior point per open region (root triples summing to -1)
    visit(expand_roots<Rat>({{Rat(-1, 10), 1}, {Rat(-3, 10), 1}, {Rat(-6, 10), 1}}));
    visit(expand_roots<Rat>({{Rat(1, 10), 1}, {Rat(-4, 10), 1}, {Rat(-7, 10), 1}}));
    visit(expand_roots<Rat>({{Rat(9, 20), 1}, {Rat(-7, 10), 1}, {Rat(-3, 4), 1}}));
    visit(expand_roots<Rat>({{Rat(7, 10), 1}, {Rat(-1, 2), 1}, {Rat(-6, 5), 1}}));
    visit(expand_roots<Rat>({{Rat(3, 2), 1}, {Rat(-11, 10), 1}, {Rat(-7, 5), 1}}));
    visit(expand_roots<Rat>({{Rat(1, 10), 1}, {Rat(1, 5), 1}, {Rat(-13, 10), 1}}));

    for (const auto& info : stratum_catalog(3))
        if (info.slice == 1) CHECK(seen.count(info.id) == 1);

    // a=0 slice
    std::set<std::string> seen0;
    auto visit0 = [&](const MonicQ& p) {
        const Classification cls = classify(p);
        if (!cls.primary().id) return;
        seen0.insert(*cls.primary().id);
        const StratumInfo* info = find_stratum(3, *cls.primary().id);
        REQUIRE(info != nullptr);
        CHECK(cls.primary().sp.str() == info->spaz);
        CHECK(cls.primary().mo->str() == info->moae);
    };
    for (int i = -10; i <= 10; ++i)
        for (int j = -10; j <= 10; ++j) visit0(from_coords({Rat(0), Rat(i, 4), Rat(j, 4)}));
    for (int k = -8; k <= 8; ++k) {
        const Rat t(k, 4);
        visit0(from_coords({Rat(0), Rat(-3) * t * t, Rat(2) * t * t * t}));
    }
    for (const auto& info : stratum_catalog(3))
        if (info.slice == 0) CHECK(seen0.count(info.id) == 1);
}

TEST_CASE("structured fields beyond the enumerated degrees") {
    // (x^2-1)(x+2)(x-3)(x+4): hyperbolic interior, opposite pair present
    const MonicQ p = expand_roots<Rat>({{Rat(1), 1}, {Rat(-1), 1}, {Rat(-2), 1}, {Rat(3), 1}, {Rat(-4), 1}});
    const Classification cls = classify(p);
    const StratumLabel& lab = cls.primary();
    CHECK(lab.degree == 5);
    CHECK_FALSE(lab.id.has_value());
    CHECK(lab.hyperbolic == HypPosition::Interior);
    CHECK(lab.in_E);
    CHECK(lab.partition == MultiplicityPartition{1, 1, 1, 1, 1});
    CHECK(lab.mo->str() == "P=N<N<P<N");
}

TEST_CASE("degree-1 strata") {
    CHECK(classify(MonicQ(std::vector<Rat>{Rat(2)})).primary().id == "a>0");
    CHECK(classify(MonicQ(std::vector<Rat>{Rat(-1, 2)})).primary().id == "a<0");
    const Classification z = classify(MonicQ(std::vector<Rat>{Rat(0)}));
    CHECK(z.primary().id == "O");
    CHECK(z.primary().mo->str() == "0");
    CHECK(z.primary().sp.str() == "(+,0)");
}

TEST_CASE("float quartics near a degenerate configuration widen to candidates") {
    // close to (x-1)^2(x+2)(x+3) but with the double root split by 1e-6
    const std::vector<double> low =
        expand_roots_low({1.0, 1.0 + 1e-6, -2.0, -3.0});
    const Classification cls = classify(MonicD{std::vector<double>(low)}, 1e-8);
    CHECK(cls.ambiguous());
    CHECK(cls.primary().partition == MultiplicityPartition{1, 1, 1, 1});
    bool merged = false;
    for (const auto& lab : cls.labels)
        if (lab.partition == MultiplicityPartition{2, 1, 1}) merged = true;
    CHECK(merged);
}

TEST_CASE("float quartics at exact landmark coordinates get the landmark id") {
    const Classification cls = classify(MonicD(std::vector<double>{1.0 / 256.0, 0.0625, 0.375, 1.0}), 1e-8);
    CHECK(cls.primary().id == "cusp4");
}

TEST_CASE("float and exact classifications agree away from boundaries") {
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        SplitMix64 rng = stream_rng(555, static_cast<std::uint64_t>(trial));
        const double b = rng.uniform(-2.0, 2.0);
        const double c = rng.uniform(-2.0, 2.0);
        const Classification fl = classify(MonicD(std::vector<double>{c, b, 1.0}), 1e-8);
        if (fl.ambiguous()) continue;  // too close to a boundary for the comparison
        const Classification ex =
            classify(MonicQ(std::vector<Rat>{rat_from_double(c), rat_from_double(b), Rat(1)}));
        CHECK(fl.primary().id == ex.primary().id);
        CHECK(fl.primary().hyperbolic == ex.primary().hyperbolic);
        CHECK(fl.primary().sp.str() == ex.primary().sp.str());
        if (ex.primary().mo) CHECK(fl.primary().mo->str() == ex.primary().mo->str());
        ++compared;
    }
    CHECK(compared > 250);
}
