#include "hypatlas/strata.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace hypatlas {

using nlohmann::json;

std::string_view to_string(HypPosition p) {
    switch (p) {
        case HypPosition::Interior: return "interior";
        case HypPosition::Boundary: return "boundary";
        case HypPosition::Outside: return "outside";
    }
    return "?";
}

std::vector<std::string> StratumLabel::memberships() const {
    std::vector<std::string> out;
    if (in_E) out.push_back("E");
    if (in_F) out.push_back("F");
    if (in_G) out.push_back("G");
    if (in_Delta) out.push_back("Δ");
    return out;
}

std::string StratumLabel::to_json() const {
    json j;
    j["degree"] = degree;
    j["hyperbolic"] = std::string(hypatlas::to_string(hyperbolic));
    j["partition"] = partition;
    j["sp"] = sp.str();
    if (mo)
        j["mo"] = mo->str();
    else
        j["mo"] = nullptr;
    j["memberships"] = memberships();
    if (id)
        j["id"] = *id;
    else
        j["id"] = nullptr;
    j["certified"] = certified;
    return j.dump();
}

// ---------------------------------------------------------------------------
// stratum catalogs
// ---------------------------------------------------------------------------

namespace {

MultiplicityPartition part(std::initializer_list<int> xs) { return MultiplicityPartition(xs); }

std::vector<StratumInfo> make_catalog_d1() {
    return {
        {"a<0", 1, 1, 1, "(+,-)", "P", part({1}), false, false, false, HypPosition::Interior},
        {"a>0", 1, 1, 1, "(+,+)", "N", part({1}), false, false, false, HypPosition::Interior},
        {"O", 1, 1, 0, "(+,0)", "0", part({1}), false, false, false, HypPosition::Interior},
    };
}

std::vector<StratumInfo> make_catalog_d2() {
    const auto I = HypPosition::Interior;
    const auto B = HypPosition::Boundary;
    return {
        {"a>0,0<b<a^2/4", 2, 1, 2, "(+,+,+)", "N<N", part({1, 1}), false, false, false, I},
        {"a<0,0<b<a^2/4", 2, 1, 2, "(+,-,+)", "P<P", part({1, 1}), false, false, false, I},
        {"a>0,b<0", 2, 1, 2, "(+,+,-)", "P<N", part({1, 1}), false, false, false, I},
        {"a<0,b<0", 2, 1, 2, "(+,-,-)", "N<P", part({1, 1}), false, false, false, I},
        {"E2", 2, 1, 1, "(+,0,-)", "P=N", part({1, 1}), true, false, false, I},
        {"a>0,b=a^2/4", 2, 1, 1, "(+,+,+)", "N=N", part({2}), false, false, true, B},
        {"a<0,b=a^2/4", 2, 1, 1, "(+,-,+)", "P=P", part({2}), false, false, true, B},
        {"a>0,b=0", 2, 1, 1, "(+,+,0)", "0<N", part({1, 1}), false, false, false, I},
        {"a<0,b=0", 2, 1, 1, "(+,-,0)", "0<P", part({1, 1}), false, false, false, I},
        {"O", 2, 1, 0, "(+,0,0)", "0=0", part({2}), false, true, true, B},
    };
}

std::vector<StratumInfo> make_catalog_d3() {
    const auto I = HypPosition::Interior;
    const auto B = HypPosition::Boundary;
    std::vector<StratumInfo> v = {
        {"1", 3, 1, 2, "(+,+,+,+)", "N<N<N", part({1, 1, 1}), false, false, false, I},
        {"2", 3, 1, 2, "(+,+,+,-)", "P<N<N", part({1, 1, 1}), false, false, false, I},
        {"3", 3, 1, 2, "(+,+,-,-)", "P<N<N", part({1, 1, 1}), false, false, false, I},
        {"4", 3, 1, 2, "(+,+,-,-)", "N<P<N", part({1, 1, 1}), false, false, false, I},
        {"5", 3, 1, 2, "(+,+,-,-)", "N<N<P", part({1, 1, 1}), false, false, false, I},
        {"6", 3, 1, 2, "(+,+,-,+)", "P<P<N", part({1, 1, 1}), false, false, false, I},
        {"7", 3, 1, 1, "(+,+,+,+)", "N=N<N", part({2, 1}), false, false, true, B},
        {"8", 3, 1, 1, "(+,+,+,+)", "N<N=N", part({2, 1}), false, false, true, B},
        {"9", 3, 1, 1, "(+,+,+,-)", "P<N=N", part({2, 1}), false, false, true, B},
        {"10", 3, 1, 1, "(+,+,-,-)", "P<N=N", part({2, 1}), false, false, true, B},
        {"11", 3, 1, 1, "(+,+,-,-)", "N=N<P", part({2, 1}), false, false, true, B},
        {"12", 3, 1, 1, "(+,+,-,+)", "P=P<N", part({2, 1}), false, false, true, B},
        {"13", 3, 1, 1, "(+,+,-,-)", "P=N<N", part({1, 1, 1}), true, false, false, I},
        {"14", 3, 1, 1, "(+,+,-,-)", "N<P=N", part({1, 1, 1}), true, false, false, I},
        {"15", 3, 1, 1, "(+,+,+,0)", "0<N<N", part({1, 1, 1}), false, false, false, I},
        {"16", 3, 1, 1, "(+,+,-,0)", "0<P<N", part({1, 1, 1}), false, false, false, I},
        {"17", 3, 1, 1, "(+,+,0,-)", "P<N<N", part({1, 1, 1}), false, false, false, I},
        {"18", 3, 1, 0, "(+,+,0,0)", "0=0<N", part({2, 1}), false, true, true, B},
        {"19", 3, 1, 0, "(+,+,+,+)", "N=N=N", part({3}), false, false, true, B},
        {"20", 3, 1, 0, "(+,+,+,0)", "0<N=N", part({2, 1}), false, false, true, B},
        {"21", 3, 1, 0, "(+,+,0,-)", "P<N=N", part({2, 1}), false, false, true, B},
        {"22", 3, 1, 0, "(+,+,-,-)", "P=N=N", part({2, 1}), true, false, true, B},
        {"5a", 3, 0, 2, "(+,0,-,-)", "N<N<P", part({1, 1, 1}), false, false, false, I},
        {"6a", 3, 0, 2, "(+,0,-,+)", "P<P<N", part({1, 1, 1}), false, false, false, I},
        {"11a", 3, 0, 1, "(+,0,-,-)", "N=N<P", part({2, 1}), false, false, true, B},
        {"12a", 3, 0, 1, "(+,0,-,+)", "P=P<N", part({2, 1}), false, false, true, B},
        {"14a16a", 3, 0, 1, "(+,0,-,0)", "0<P=N", part({1, 1, 1}), true, false, false, I},
        {"18a", 3, 0, 0, "(+,0,0,0)", "0=0=0", part({3}), false, true, true, B},
    };
    return v;
}

}  // namespace

const std::vector<StratumInfo>& stratum_catalog(int degree) {
    static const std::vector<StratumInfo> d1 = make_catalog_d1();
    static const std::vector<StratumInfo> d2 = make_catalog_d2();
    static const std::vector<StratumInfo> d3 = make_catalog_d3();
    static const std::vector<StratumInfo> none;
    switch (degree) {
        case 1: return d1;
        case 2: return d2;
        case 3: return d3;
        default: return none;
    }
}

const StratumInfo* find_stratum(int degree, std::string_view id) {
    for (const auto& s : stratum_catalog(degree))
        if (s.id == id) return &s;
    return nullptr;
}

// ---------------------------------------------------------------------------
// landmarks
// ---------------------------------------------------------------------------

namespace {

Rat q(long num, long den = 1) { return Rat(num, den); }

MonicQ poly_from_high(std::vector<Rat> high_to_low_tail) {
    std::vector<Rat> low(high_to_low_tail.rbegin(), high_to_low_tail.rend());
    return MonicQ(std::move(low));
}

LandmarkPoint lm(std::string name, int degree, std::vector<Rat> coords, MultiplicityPartition partition,
                 bool E, bool F, bool G, bool D) {
    MonicQ p = poly_from_high(coords);
    return LandmarkPoint{std::move(name), degree, std::move(coords), std::move(p), std::move(partition), E, F, G, D};
}

std::vector<LandmarkPoint> make_landmarks() {
    std::vector<LandmarkPoint> v;
    // degree 3, coordinates (a, b, c)
    v.push_back(lm("O", 3, {q(1), q(0), q(0)}, part({2, 1}), false, false, true, true));
    v.push_back(lm("T", 3, {q(1), q(1, 3), q(1, 27)}, part({3}), false, false, false, true));
    v.push_back(lm("P", 3, {q(1), q(1, 4), q(0)}, part({2, 1}), false, false, false, true));
    v.push_back(lm("S", 3, {q(1), q(0), q(-4, 27)}, part({2, 1}), false, false, false, true));
    v.push_back(lm("M", 3, {q(1), q(-1), q(-1)}, part({2, 1}), true, false, false, true));
    // degree 4, coordinates (a, b, c, h)
    v.push_back(lm("cusp4", 4, {q(1), q(3, 8), q(1, 16), q(1, 256)}, part({4}), false, false, false, true));
    v.push_back(lm("I", 4, {q(1), q(0), q(-1, 8), q(1, 64)}, part({2, 2}), false, false, false, true));
    v.push_back(lm("L", 4, {q(1), q(0), q(-1, 4), q(-1, 16)}, part({3, 1}), true, false, false, true));
    v.push_back(lm("R", 4, {q(1), q(0), q(0), q(0)}, part({3, 1}), false, false, true, true));
    v.push_back(lm("B", 4, {q(1), q(2, 5), q(3, 40), q(9, 1600)}, part({2, 2}), false, false, false, true));
    v.push_back(lm("N", 4, {q(0), q(1), q(0), q(1, 4)}, part({2, 2}), false, true, false, true));
    v.push_back(lm("tangency4", 4, {q(1), q(1, 8), q(-1, 16), q(-3, 256)}, part({2, 1, 1}), true, false, false, true));
    return v;
}

}  // namespace

const std::vector<LandmarkPoint>& all_landmarks() {
    static const std::vector<LandmarkPoint> v = make_landmarks();
    return v;
}

const LandmarkPoint& landmark(std::string_view name, int degree) {
    for (const auto& l : all_landmarks())
        if (l.name == name && l.degree == degree) return l;
    throw std::invalid_argument("landmark: unknown name '" + std::string(name) + "' for degree " + std::to_string(degree));
}

// ---------------------------------------------------------------------------
// E/F/G membership
// ---------------------------------------------------------------------------

EtildeMembership etilde_membership(const MonicQ& p) {
    EtildeMembership m;
    m.certified = true;

    const int d = p.degree();
    m.in_G = d >= 2 && p.coeff(0).is_zero() && p.coeff(1).is_zero();
    for (int j = 0; j <= d; ++j) {
        if (!p.coeff(j).is_zero()) break;
        m.zero_multiplicity = j + 1;
    }

    // Roots r with -r also a root are the roots of gcd(sf(x), sf(-x)); its even
    // part E(y), y = x^2, has a positive root y = v^2 per opposite real pair and
    // a negative root y = -beta^2 per purely imaginary pair.
    const PolyQ sf = square_free_part(p.to_poly());
    const PolyQ g = gcd_monic(sf, sf.reflect().monic());
    PolyQ pp = g;
    if (pp.degree() >= 1 && pp.coeff(0).is_zero()) pp = divmod(pp, PolyQ::monomial(1)).first;
    std::vector<Rat> even;
    for (int k = 0; k <= pp.degree(); k += 2) even.push_back(pp.coeff(k));
    const PolyQ E{std::vector<Rat>(even)};
    if (E.degree() >= 1) {
        for (auto& y : isolate_real_roots(E)) {
            IsolatedRoot yr = y;
            while (yr.sign() == 0) {
                if (yr.poly.eval(Rat(0)).is_zero()) break;  // y = 0 cannot occur (stripped)
                refine(yr);
            }
            const double ym = yr.midpoint();
            if (yr.sign() > 0) {
                m.in_E = true;
                m.e_witnesses.push_back(std::sqrt(std::max(ym, 0.0)));
            } else if (yr.sign() < 0) {
                m.in_F = true;
                m.f_witnesses.push_back(std::sqrt(std::max(-ym, 0.0)));
            }
        }
    }
    if (d == 4) {
        const Rat ph = phi(p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
        m.phi_vanishes = ph.is_zero();
    }
    return m;
}

EtildeMembership etilde_membership(const MonicD& p, double tol) {
    EtildeMembership m;
    m.certified = false;
    const RootMultiset roots = all_roots(p, tol);
    for (const auto& a : roots.entries) {
        if (a.tag == RootTag::ComplexPair) {
            if (std::fabs(a.value) <= tol * (1.0 + std::fabs(a.imag))) {
                m.in_F = true;
                m.f_witnesses.push_back(a.imag);
            }
            continue;
        }
        if (std::fabs(a.value) <= tol) {
            if (a.multiplicity >= 2) m.in_G = true;
            m.zero_multiplicity = std::max(m.zero_multiplicity, a.multiplicity);
            continue;
        }
        if (a.value > 0) {
            for (const auto& b : roots.entries)
                if (b.tag == RootTag::Real && b.value < 0 &&
                    std::fabs(a.value + b.value) <= tol * (1.0 + a.value)) {
                    m.in_E = true;
                    m.e_witnesses.push_back(a.value);
                }
        }
    }
    if (p.degree() == 4) {
        const double ph = phi(p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
        double scale = 1.0;
        for (int j = 0; j < 4; ++j) scale = std::max(scale, std::fabs(p.coeff(j)));
        m.phi_vanishes = std::fabs(ph) <= tol * scale * scale;
    }
    return m;
}

// ---------------------------------------------------------------------------
// enumerated ids
// ---------------------------------------------------------------------------

namespace {

// Sign oracle: exact signs, with near-zero quantities recorded so the float
// path can re-run under forced sign assignments and collect candidate ids.
struct SignProbe {
    double theta = 0.0;  // 0: exact
    std::map<std::string, int> overrides;
    std::vector<std::string> ambiguous;

    int sign(const std::string& tag, const Rat& v, double theta_scale = 1.0) {
        if (auto it = overrides.find(tag); it != overrides.end()) return it->second;
        const int s = sgn(v);
        if (theta > 0 && to_double(rat_abs(v)) <= theta * theta_scale) {
            if (std::find(ambiguous.begin(), ambiguous.end(), tag) == ambiguous.end()) ambiguous.push_back(tag);
        }
        return s;
    }
};

Rat disc_cubic_a1(const Rat& b, const Rat& c) {
    // disc(x^3 + x^2 + b x + c)
    return Rat(18) * b * c - Rat(4) * c + b * b - Rat(4) * b * b * b - Rat(27) * c * c;
}

Rat disc_cubic_a0(const Rat& b, const Rat& c) {
    // disc(x^3 + b x + c)
    return Rat(-4) * b * b * b - Rat(27) * c * c;
}

// Boundary arcs of the a=1 cubic slice, keyed by the double root xi.
std::string d3_a1_boundary_id_exact(const Rat& b, const Rat& c) {
    const MonicQ p(std::vector<Rat>{c, b, Rat(1)});
    const auto decomp = square_free_decomposition(p);
    Rat xi;
    bool triple = false;
    for (const auto& [f, mult] : decomp) {
        if (mult == 3) triple = true;
        if (mult == 2) {
            if (f.degree() != 1) throw std::logic_error("double factor of a cubic must be linear");
            xi = -f.coeff(0) / f.lead();
        }
    }
    if (triple) return "19";
    if (xi.is_zero()) return "18";
    if (xi == q(-1, 3)) return "19";
    if (xi == q(-1, 2)) return "20";
    if (xi == q(-2, 3)) return "21";
    if (xi == q(-1)) return "22";
    if (xi > 0) return "12";
    if (xi > q(-1, 3)) return "7";
    if (xi > q(-1, 2)) return "8";
    if (xi > q(-2, 3)) return "9";
    if (xi > q(-1)) return "10";
    return "11";
}

// Approximate variant for forced-boundary candidate branches: xi from the
// nearest critical point, ranges widened by theta_xi.
std::vector<std::string> d3_a1_boundary_ids_near(double b, double c, double theta_xi) {
    // critical points of x^3 + x^2 + b x + c
    const double disc_q = 1.0 - 3.0 * b;
    std::vector<std::string> out;
    if (disc_q < 0) return out;
    const double r1 = (-1.0 - std::sqrt(disc_q)) / 3.0;
    const double r2 = (-1.0 + std::sqrt(disc_q)) / 3.0;
    auto qval = [&](double x) { return std::fabs(((x + 1.0) * x + b) * x + c); };
    const double xi = qval(r1) <= qval(r2) ? r1 : r2;

    const std::pair<double, const char*> points[] = {
        {0.0, "18"}, {-1.0 / 3.0, "19"}, {-0.5, "20"}, {-2.0 / 3.0, "21"}, {-1.0, "22"}};
    for (auto [x, id] : points)
        if (std::fabs(xi - x) <= theta_xi) out.push_back(id);
    const std::tuple<double, double, const char*> arcs[] = {
        {-1.0 / 3.0, 0.0, "7"},  {-0.5, -1.0 / 3.0, "8"}, {-2.0 / 3.0, -0.5, "9"},
        {-1.0, -2.0 / 3.0, "10"}};
    for (auto [lo, hi, id] : arcs)
        if (xi > lo - theta_xi && xi < hi + theta_xi) out.push_back(id);
    if (xi < -1.0 + theta_xi) out.push_back("11");
    if (xi > -theta_xi) out.push_back("12");
    return out;
}

std::vector<std::string> d3_a1_ids(const Rat& b, const Rat& c, SignProbe& probe) {
    const double scale = 1.0 + std::fabs(to_double(b)) + std::fabs(to_double(c));
    const int sD = probe.sign("disc", disc_cubic_a1(b, c), scale * scale * scale);
    if (sD < 0) return {};
    if (sD == 0) {
        if (probe.theta == 0.0) return {d3_a1_boundary_id_exact(b, c)};
        return d3_a1_boundary_ids_near(to_double(b), to_double(c), std::cbrt(probe.theta));
    }
    const int sb = probe.sign("b", b, scale);
    const int sc = probe.sign("c", c, scale);
    if (sc == 0) {
        if (sb > 0) return {"15"};
        if (sb < 0) return {"16"};
        return {};
    }
    if (sb == 0) return sc < 0 ? std::vector<std::string>{"17"} : std::vector<std::string>{};
    if (sb < 0 && sc < 0) {
        const int sbc = probe.sign("b-c", b - c, scale);
        if (sbc == 0) {
            const int s1 = probe.sign("b+1", b + 1, scale);
            if (s1 > 0) return {"13"};
            if (s1 < 0) return {"14"};
            return {};
        }
        if (sbc < 0) return {"4"};
        const int sq1 = probe.sign("2+b+c", Rat(2) + b + c, scale);
        if (sq1 > 0) return {"3"};
        if (sq1 < 0) return {"5"};
        return {};
    }
    if (sb > 0 && sc > 0) return {"1"};
    if (sb > 0 && sc < 0) return {"2"};
    return {"6"};  // b < 0, c > 0
}

std::vector<std::string> d3_a0_ids(const Rat& b, const Rat& c, SignProbe& probe) {
    const double scale = 1.0 + std::fabs(to_double(b)) + std::fabs(to_double(c));
    const int sD = probe.sign("disc", disc_cubic_a0(b, c), scale * scale * scale);
    if (sD < 0) return {};
    const int sc = probe.sign("c", c, scale);
    if (sD == 0) {
        if (sc < 0) return {"11a"};
        if (sc > 0) return {"12a"};
        return {"18a"};
    }
    if (sc < 0) return {"5a"};
    if (sc > 0) return {"6a"};
    return {"14a16a"};
}

std::vector<std::string> d2_ids(const Rat& a, const Rat& b, SignProbe& probe) {
    const double scale = 1.0 + std::fabs(to_double(a)) + std::fabs(to_double(b));
    const int sD = probe.sign("disc", a * a - Rat(4) * b, scale * scale);
    if (sD < 0) return {};
    const int sa = probe.sign("a", a, scale);
    if (sD == 0) {
        if (sa > 0) return {"a>0,b=a^2/4"};
        if (sa < 0) return {"a<0,b=a^2/4"};
        return {"O"};
    }
    const int sb = probe.sign("b", b, scale);
    if (sb == 0) {
        if (sa > 0) return {"a>0,b=0"};
        if (sa < 0) return {"a<0,b=0"};
        return {};
    }
    if (sb < 0) {
        if (sa > 0) return {"a>0,b<0"};
        if (sa < 0) return {"a<0,b<0"};
        return {"E2"};
    }
    if (sa > 0) return {"a>0,0<b<a^2/4"};
    if (sa < 0) return {"a<0,0<b<a^2/4"};
    return {};
}

std::vector<std::string> d1_ids(const Rat& a, SignProbe& probe) {
    const int sa = probe.sign("a", a, 1.0 + std::fabs(to_double(a)));
    if (sa > 0) return {"a>0"};
    if (sa < 0) return {"a<0"};
    return {"O"};
}

// Runs the id routine, then re-runs it under every sign assignment of the
// ambiguous quantities and unions the results.
template <class F>
std::set<std::string> enumerate_ids(F&& run, double theta) {
    SignProbe base;
    base.theta = theta;
    std::set<std::string> ids;
    for (const auto& id : run(base)) ids.insert(id);
    if (base.ambiguous.empty()) return ids;
    const size_t k = std::min<size_t>(base.ambiguous.size(), 6);
    size_t total = 1;
    for (size_t i = 0; i < k; ++i) total *= 3;
    for (size_t mask = 0; mask < total; ++mask) {
        SignProbe probe;
        probe.theta = theta;
        size_t m = mask;
        for (size_t i = 0; i < k; ++i) {
            probe.overrides[base.ambiguous[i]] = static_cast<int>(m % 3) - 1;
            m /= 3;
        }
        for (const auto& id : run(probe)) ids.insert(id);
    }
    return ids;
}

// Enumerated ids of a d<=3 coefficient point (a_{d-1}..a_0 high-to-low),
// normalized to the a=1 or a=0 slice for cubics.
std::set<std::string> enumerated_ids(int degree, const std::vector<Rat>& coords, double theta) {
    if (degree == 1) {
        return enumerate_ids([&](SignProbe& p) { return d1_ids(coords[0], p); }, theta);
    }
    if (degree == 2) {
        return enumerate_ids([&](SignProbe& p) { return d2_ids(coords[0], coords[1], p); }, theta);
    }
    if (degree == 3) {
        return enumerate_ids(
            [&](SignProbe& p) -> std::vector<std::string> {
                const Rat &a = coords[0], &b = coords[1], &c = coords[2];
                const double scale = 1.0 + std::fabs(to_double(a)) + std::fabs(to_double(b)) + std::fabs(to_double(c));
                const int sa = p.sign("a", a, scale);
                if (sa == 0) return d3_a0_ids(b, c, p);
                const Rat u = Rat(1) / a;  // root dilatation sending a to 1
                return d3_a1_ids(b * u * u, c * u * u * u, p);
            },
            theta);
    }
    return {};
}

std::optional<std::string> d4_landmark_id(const std::vector<Rat>& coords) {
    const Rat& a = coords[0];
    std::vector<Rat> n = coords;
    if (!a.is_zero()) {
        const Rat u = Rat(1) / a;
        Rat pw = u;
        for (auto& x : n) {
            x *= pw;
            pw *= u;
        }
    }
    for (const auto& l : all_landmarks())
        if (l.degree == 4 && l.coords == n) return l.name;
    return std::nullopt;
}

StratumLabel label_from_catalog(int degree, const StratumInfo& info) {
    StratumLabel lab;
    lab.degree = degree;
    lab.hyperbolic = info.pos;
    lab.partition = info.partition;
    lab.sp = *SignPattern::parse(info.spaz);
    lab.mo = *ModuliOrder::parse(info.moae);
    lab.in_E = info.in_E;
    lab.in_G = info.in_G;
    lab.in_Delta = info.in_Delta;
    lab.id = info.id;
    lab.certified = false;
    return lab;
}

}  // namespace

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

Classification classify(const MonicQ& p) {
    const int d = p.degree();
    StratumLabel lab;
    lab.degree = d;
    lab.certified = true;
    lab.sp = sign_pattern(p);

    const RootMultiset roots = all_roots(p);
    bool hyperbolic = true;
    for (const auto& r : roots.entries)
        if (r.tag == RootTag::ComplexPair) hyperbolic = false;
    lab.partition = multiplicity_partition(roots);
    bool simple = true;
    for (int m : lab.partition)
        if (m > 1) simple = false;
    lab.hyperbolic = hyperbolic ? (simple ? HypPosition::Interior : HypPosition::Boundary) : HypPosition::Outside;
    lab.in_Delta = !simple;
    if (hyperbolic) lab.mo = moduli_order(roots);

    const EtildeMembership em = etilde_membership(p);
    lab.in_E = em.in_E;
    lab.in_F = em.in_F;
    lab.in_G = em.in_G;

    std::vector<Rat> coords;
    for (int j = d - 1; j >= 0; --j) coords.push_back(p.coeff(j));
    if (d <= 3) {
        const auto ids = enumerated_ids(d, coords, 0.0);
        if (ids.size() == 1) lab.id = *ids.begin();
    } else if (d == 4) {
        lab.id = d4_landmark_id(coords);
    }

    Classification out;
    out.certified = true;
    out.labels.push_back(std::move(lab));
    return out;
}

namespace {

StratumLabel float_label(const MonicD& p, double tol) {
    StratumLabel lab;
    lab.degree = p.degree();
    lab.certified = false;
    lab.sp = sign_pattern(p);

    const RootMultiset roots = all_roots(p, tol);
    bool hyperbolic = true;
    for (const auto& r : roots.entries)
        if (r.tag == RootTag::ComplexPair) hyperbolic = false;
    lab.partition = multiplicity_partition(roots);
    bool simple = true;
    for (int m : lab.partition)
        if (m > 1) simple = false;
    lab.hyperbolic = hyperbolic ? (simple ? HypPosition::Interior : HypPosition::Boundary) : HypPosition::Outside;
    lab.in_Delta = !simple;
    if (hyperbolic) lab.mo = moduli_order(roots, tol);

    const EtildeMembership em = etilde_membership(p, tol);
    lab.in_E = em.in_E;
    lab.in_F = em.in_F;
    lab.in_G = em.in_G;
    return lab;
}

bool same_structure(const StratumLabel& a, const StratumLabel& b) {
    return a.hyperbolic == b.hyperbolic && a.partition == b.partition && a.in_E == b.in_E && a.in_F == b.in_F &&
           a.in_G == b.in_G && a.in_Delta == b.in_Delta &&
           (a.mo.has_value() == b.mo.has_value() && (!a.mo || a.mo->str() == b.mo->str()));
}

}  // namespace

Classification classify(const MonicD& p, double tol) {
    const int d = p.degree();
    StratumLabel lab = float_label(p, tol);

    std::vector<Rat> coords;
    for (int j = d - 1; j >= 0; --j) coords.push_back(rat_from_double(p.coeff(j)));

    Classification out;
    if (d <= 3) {
        double scale = 1.0;
        for (int j = 0; j < d; ++j) scale = std::max(scale, std::fabs(p.coeff(j)));
        const auto exact_ids = enumerated_ids(d, coords, 0.0);
        if (exact_ids.size() == 1) lab.id = *exact_ids.begin();
        const auto ids = enumerated_ids(d, coords, tol * scale);
        out.labels.push_back(lab);
        for (const auto& id : ids) {
            if (lab.id && id == *lab.id) continue;
            if (const StratumInfo* info = find_stratum(d, id)) out.labels.push_back(label_from_catalog(d, *info));
        }
    } else {
        if (d == 4) lab.id = d4_landmark_id(coords);
        out.labels.push_back(lab);
        // near-degenerate configurations: offer the coarser clustering as a candidate
        StratumLabel coarse = float_label(p, 64 * tol);
        if (!same_structure(lab, coarse)) out.labels.push_back(std::move(coarse));
    }
    return out;
}

// ---------------------------------------------------------------------------
// curves
// ---------------------------------------------------------------------------

std::string_view curve_name(CurveId id) {
    switch (id) {
        case CurveId::Pi2Boundary: return "pi2-boundary";
        case CurveId::C3: return "c3";
        case CurveId::E3: return "e3";
        case CurveId::F3: return "f3";
        case CurveId::S4: return "s4";
        case CurveId::LR4: return "lr4";
        case CurveId::LI4: return "li4";
        case CurveId::H4: return "h4";
        case CurveId::Pcal4: return "pcal";
        case CurveId::DiscSlice: return "disc-slice";
        case CurveId::EtildeSlice: return "etilde-slice";
        case CurveId::EvenDiscSlice: return "even-disc-slice";
    }
    return "?";
}

std::optional<CurveId> parse_curve_name(std::string_view s) {
    for (CurveId id : {CurveId::Pi2Boundary, CurveId::C3, CurveId::E3, CurveId::F3, CurveId::S4, CurveId::LR4,
                       CurveId::LI4, CurveId::H4, CurveId::Pcal4, CurveId::DiscSlice, CurveId::EtildeSlice,
                       CurveId::EvenDiscSlice})
        if (curve_name(id) == s) return id;
    return std::nullopt;
}

std::pair<Rat, Rat> default_range(CurveId id) {
    switch (id) {
        case CurveId::Pi2Boundary: return {q(-2), q(2)};
        case CurveId::C3:
        case CurveId::H4: return {q(-8, 5), q(4, 5)};
        case CurveId::E3:
        case CurveId::F3: return {q(0), q(2)};
        case CurveId::S4: return {q(-6, 5), q(3, 5)};
        case CurveId::LR4: return {q(-2), q(3, 8)};
        case CurveId::LI4: return {q(3, 8), q(2)};
        case CurveId::Pcal4: return {q(-1), q(1)};
        case CurveId::DiscSlice:
        case CurveId::EvenDiscSlice: return {q(-3, 2), q(1)};
        case CurveId::EtildeSlice: return {q(-1), q(1)};
    }
    return {q(-1), q(1)};
}

namespace {

struct CurveDef {
    std::string param_name;
    std::vector<std::string> coord_names;
    std::optional<Rat> dom_lo, dom_hi;  // natural domain bounds (closed)
    std::function<std::vector<Rat>(const Rat&)> eval;
};

void add_disc_slice_singularities(CurvePolyline& out, const Rat& a0, const Rat& b0) {
    // velocity vanishes where 6 t^2 + 3 a0 t + b0 = 0
    const double a = to_double(a0), b = to_double(b0);
    const double disc = 9.0 * a * a - 24.0 * b;
    auto point_at = [&](double t) {
        const double c = ((-4.0 * t - 3.0 * a) * t - 2.0 * b) * t;
        const double h = ((3.0 * t + 2.0 * a) * t + b) * t * t;
        return std::vector<double>{c, h};
    };
    if (disc >= 0) {
        const double s = std::sqrt(disc);
        for (double t : {(-3.0 * a - s) / 12.0, (-3.0 * a + s) / 12.0}) {
            out.singular_points.push_back(SingularPoint{SingularPoint::Kind::Cusp, t, std::nullopt, point_at(t)});
            if (disc == 0) break;
        }
    }
    // self-intersection: both t-branches of a two-double-root polynomial
    const double zt_disc = 0.75 * a * a - 2.0 * b;  // (zeta - theta)^2
    if (zt_disc > 0) {
        const double s = std::sqrt(zt_disc);
        const double zeta = (-a / 2.0 + s) / 2.0, theta = (-a / 2.0 - s) / 2.0;
        const double zt = (b - a * a / 4.0) / 2.0;
        out.singular_points.push_back(
            SingularPoint{SingularPoint::Kind::SelfIntersection, zeta, theta, {a * zt, zt * zt}});
    }
}

}  // namespace

CurvePolyline emit_curve(CurveId id, std::optional<std::pair<Rat, Rat>> range, int n_samples, const Rat& a,
                         const Rat& b) {
    if (n_samples < 2) throw std::invalid_argument("emit_curve: n_samples must be >= 2");

    CurveDef def;
    CurvePolyline out;
    out.id = id;
    out.a = a;
    out.b = b;

    switch (id) {
        case CurveId::Pi2Boundary:
            def = {"a", {"a", "b"}, std::nullopt, std::nullopt,
                   [](const Rat& t) { return std::vector<Rat>{t, t * t / 4}; }};
            break;
        case CurveId::C3:
            def = {"xi", {"b", "c"}, std::nullopt, std::nullopt, [](const Rat& t) {
                       return std::vector<Rat>{Rat(-3) * t * t - 2 * t, Rat(2) * t * t * t + t * t};
                   }};
            break;
        case CurveId::E3:
            def = {"v", {"b", "c"}, Rat(0), std::nullopt,
                   [](const Rat& t) { return std::vector<Rat>{-(t * t), -(t * t)}; }};
            break;
        case CurveId::F3:
            def = {"v", {"b", "c"}, Rat(0), std::nullopt,
                   [](const Rat& t) { return std::vector<Rat>{t * t, t * t}; }};
            break;
        case CurveId::S4:
            def = {"xi", {"b", "c", "h"}, std::nullopt, std::nullopt, [](const Rat& t) {
                       return std::vector<Rat>{Rat(-6) * t * t - 3 * t, Rat(8) * t * t * t + 3 * t * t,
                                               Rat(-3) * t * t * t * t - t * t * t};
                   }};
            break;
        case CurveId::LR4:
        case CurveId::LI4: {
            const Rat a0 = a;
            if (a0.is_zero()) throw std::invalid_argument("emit_curve: lr4/li4 need a != 0");
            const Rat bcrit = Rat(3) * a0 * a0 / 8;
            const bool real_branch = (id == CurveId::LR4);
            def = {"b",
                   {"b", "c", "h"},
                   real_branch ? std::optional<Rat>{} : std::optional<Rat>{bcrit},
                   real_branch ? std::optional<Rat>{bcrit} : std::optional<Rat>{},
                   [a0](const Rat& t) {
                       const Rat zt = (t - a0 * a0 / 4) / 2;  // product of the double roots
                       return std::vector<Rat>{t, a0 * zt, zt * zt};
                   }};
            break;
        }
        case CurveId::H4:
            def = {"xi", {"b", "c", "h"}, std::nullopt, std::nullopt, [](const Rat& t) {
                       return std::vector<Rat>{Rat(-3) * t * t - 2 * t, Rat(2) * t * t * t + t * t, Rat(0)};
                   }};
            break;
        case CurveId::Pcal4:
            def = {"u", {"b", "c", "h"}, std::nullopt, std::nullopt, [](const Rat& t) {
                       const Rat bb = t - Rat(2) * t * t;
                       const Rat cc = -(t * t);
                       return std::vector<Rat>{bb, cc, cc * (bb - cc)};
                   }};
            break;
        case CurveId::DiscSlice:
        case CurveId::EvenDiscSlice: {
            const Rat a0 = (id == CurveId::EvenDiscSlice) ? Rat(0) : a;
            const Rat b0 = b;
            def = {"t", {"c", "h"}, std::nullopt, std::nullopt, [a0, b0](const Rat& t) {
                       const Rat c = Rat(-4) * t * t * t - 3 * a0 * t * t - 2 * b0 * t;
                       const Rat h = Rat(3) * t * t * t * t + 2 * a0 * t * t * t + b0 * t * t;
                       return std::vector<Rat>{c, h};
                   }};
            break;
        }
        case CurveId::EtildeSlice: {
            const Rat a0 = a, b0 = b;
            if (a0.is_zero()) {
                // Phi(0,b,c,h) = c^2: the slice degenerates to the line c = 0
                def = {"h", {"c", "h"}, std::nullopt, std::nullopt,
                       [](const Rat& t) { return std::vector<Rat>{Rat(0), t}; }};
            } else {
                def = {"c", {"c", "h"}, std::nullopt, std::nullopt, [a0, b0](const Rat& t) {
                           return std::vector<Rat>{t, t * (a0 * b0 - t) / (a0 * a0)};
                       }};
            }
            break;
        }
    }

    std::pair<Rat, Rat> r = range ? *range : default_range(id);
    if (def.dom_lo && r.first < *def.dom_lo) r.first = *def.dom_lo;
    if (def.dom_hi && r.second > *def.dom_hi) r.second = *def.dom_hi;
    if (r.first > r.second) throw std::invalid_argument("emit_curve: empty intersection with the curve domain");

    out.param_name = def.param_name;
    out.coord_names = def.coord_names;
    const Rat lo = r.first, hi = r.second;
    for (int i = 0; i < n_samples; ++i) {
        const Rat t = lo + (hi - lo) * Rat(i) / Rat(n_samples - 1);
        out.params.push_back(t);
        out.points.push_back(def.eval(t));
    }

    // singular points (cusps, self-intersections) where the family has them
    auto in_range = [&](double t) { return t >= to_double(lo) - 1e-12 && t <= to_double(hi) + 1e-12; };
    switch (id) {
        case CurveId::C3:
        case CurveId::H4:
            if (in_range(-1.0 / 3.0)) {
                std::vector<double> pt{1.0 / 3.0, 1.0 / 27.0};
                if (id == CurveId::H4) pt.push_back(0.0);
                out.singular_points.push_back(SingularPoint{SingularPoint::Kind::Cusp, -1.0 / 3.0, std::nullopt, pt});
            }
            break;
        case CurveId::S4:
            if (in_range(-0.25))
                out.singular_points.push_back(
                    SingularPoint{SingularPoint::Kind::Cusp, -0.25, std::nullopt, {0.375, 0.0625, 1.0 / 256.0}});
            break;
        case CurveId::DiscSlice:
            add_disc_slice_singularities(out, a, b);
            break;
        case CurveId::EvenDiscSlice:
            add_disc_slice_singularities(out, Rat(0), b);
            break;
        default:
            break;
    }
    std::erase_if(out.singular_points, [&](const SingularPoint& s) { return !in_range(s.param); });
    return out;
}

std::string CurvePolyline::to_csv() const {
    std::ostringstream os;
    os << param_name;
    for (const auto& n : coord_names) os << ',' << n;
    os << '\n';
    os.precision(17);
    for (size_t i = 0; i < params.size(); ++i) {
        os << to_double(params[i]);
        for (const auto& x : points[i]) os << ',' << to_double(x);
        os << '\n';
    }
    return os.str();
}

std::string CurvePolyline::singular_json() const {
    json arr = json::array();
    for (const auto& s : singular_points) {
        json j;
        j["kind"] = s.kind == SingularPoint::Kind::Cusp ? "cusp" : "self-intersection";
        j["param"] = s.param;
        if (s.param2) j["param2"] = *s.param2;
        j["point"] = s.point;
        arr.push_back(j);
    }
    return arr.dump();
}

std::string CurvePolyline::to_json() const {
    json j;
    j["curve"] = std::string(curve_name(id));
    j["param"] = param_name;
    j["coords"] = coord_names;
    j["a"] = hypatlas::to_string(a);
    j["b"] = hypatlas::to_string(b);
    json samples = json::array();
    for (size_t i = 0; i < params.size(); ++i) {
        json row;
        row["param"] = to_double(params[i]);
        json pt = json::array();
        for (const auto& x : points[i]) pt.push_back(to_double(x));
        row["point"] = pt;
        samples.push_back(row);
    }
    j["samples"] = samples;
    j["singular_points"] = json::parse(singular_json());
    return j.dump();
}

}  // namespace hypatlas
