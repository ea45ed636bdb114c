#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypatlas/patterns.hpp"
#include "hypatlas/rng.hpp"

using namespace hypatlas;

namespace {

MonicQ mq(std::initializer_list<Rat> low) { return MonicQ(std::vector<Rat>(low)); }

}  // namespace

TEST_CASE("sign patterns") {
    CHECK(sign_pattern(mq({Rat(-1), Rat(-1), Rat(1)})).str() == "(+,+,-,-)");
    CHECK(sign_pattern(mq({Rat(0), Rat(0), Rat(1)})).str() == "(+,+,0,0)");
    CHECK(sign_pattern(expand_roots<Rat>({{Rat(-1, 4), 4}})).str() == "(+,+,+,+,+)");
    CHECK(sign_pattern(mq({Rat(0), Rat(0), Rat(1)})).has_zeros());
}

TEST_CASE("descartes counts") {
    const auto c1 = descartes_counts(*SignPattern::parse("(+,+,-,-)"));
    CHECK(c1.c == 1);
    CHECK(c1.p == 2);
    CHECK(c1.c_prime == 2);

    const auto c2 = descartes_counts(*SignPattern::parse("(+,-,+,-,+)"));
    CHECK(c2.c == 4);
    CHECK(c2.p == 0);

    const auto c3 = descartes_counts(*SignPattern::parse("(+,+,+,+,+)"));
    CHECK(c3.c == 0);
    CHECK(c3.p == 4);

    const auto z = descartes_counts(*SignPattern::parse("(+,+,0,-)"));
    CHECK(z.c == 1);
    CHECK_FALSE(z.p.has_value());
}

TEST_CASE("c' equals p for zero-free patterns") {
    for (int d = 2; d <= 8; ++d) {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            SignPattern sp;
            sp.signs.push_back(1);
            for (int j = 0; j < d; ++j) sp.signs.push_back((mask >> j) & 1 ? 1 : -1);
            const auto dc = descartes_counts(sp);
            REQUIRE(dc.p.has_value());
            CHECK(dc.c_prime == *dc.p);
            CHECK(dc.c + *dc.p == d);
        }
    }
}

TEST_CASE("moduli order: the stacked degree-8 example") {
    const MonicQ p = expand_roots<Rat>(
        {{Rat(0), 2}, {Rat(1), 1}, {Rat(4), 1}, {Rat(-1), 1}, {Rat(-2), 2}, {Rat(-5), 1}});
    CHECK(moduli_order(all_roots(p)).str() == "0=0<P=N<N=N<P<N");
}

TEST_CASE("moduli order: opposite pair plus a negative root") {
    const MonicQ p = expand_roots<Rat>({{Rat(1, 2), 1}, {Rat(-1, 2), 1}, {Rat(-1), 1}});
    CHECK(moduli_order(all_roots(p)).str() == "P=N<N");
}

TEST_CASE("moduli order: a single multiple root") {
    CHECK(moduli_order(all_roots(expand_roots<Rat>({{Rat(-1), 4}}))).str() == "N=N=N=N");
}

TEST_CASE("moduli order rejects complex roots") {
    const MonicQ p = mq({Rat(1), Rat(0)});  // x^2 + 1
    CHECK_THROWS(moduli_order(all_roots(p)));
}

TEST_CASE("moduli order parses both group spellings and renormalizes") {
    const auto a = ModuliOrder::parse("P=N<N");
    const auto b = ModuliOrder::parse("N=P<N");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
    CHECK(b->str() == "P=N<N");
}

TEST_CASE("canonical moduli orders") {
    CHECK(canonical_mo(*SignPattern::parse("(+,-,+,-,+,+,-,-,+)")).str() == "P<N<P<N<P<P<P<P");
    CHECK(canonical_mo(*SignPattern::parse("(+,+,+,+,+)")).str() == "N<N<N<N");
    CHECK(canonical_mo(*SignPattern::parse("(+,+,-,+,+)")).str() == "N<P<P<N");
    CHECK(canonical_mo(*SignPattern::parse("(+,+,+,-,+)")).str() == "P<P<N<N");
    CHECK(canonical_mo(*SignPattern::parse("(+,+,-,+,-)")).str() == "P<P<P<N");
    CHECK(canonical_mo(*SignPattern::parse("(+,+,+,+,-)")).str() == "P<N<N<N");
    CHECK_THROWS(canonical_mo(*SignPattern::parse("(+,0,-)")));
}

TEST_CASE("canonical MO letter counts match the descartes counts") {
    for (int d = 2; d <= 8; ++d) {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            SignPattern sp;
            sp.signs.push_back(1);
            for (int j = 0; j < d; ++j) sp.signs.push_back((mask >> j) & 1 ? 1 : -1);
            const ModuliOrder mo = canonical_mo(sp);
            const auto dc = descartes_counts(sp);
            CHECK(mo.count(MoLetter::P) == dc.c);
            CHECK(mo.count(MoLetter::N) == *dc.p);
        }
    }
}

TEST_CASE("descartes verification") {
    const auto r1 = verify_descartes(mq({Rat(-1), Rat(-1), Rat(1)}));
    CHECK(r1.pos == 1);
    CHECK(r1.neg == 2);
    CHECK(r1.c == 1);
    CHECK(r1.p == 2);
    CHECK(r1.equality_case);
    CHECK(r1.satisfied);

    const auto r2 = verify_descartes(mq({Rat(9, 1600), Rat(3, 40), Rat(2, 5), Rat(1)}));
    CHECK(r2.pos == 0);
    CHECK(r2.c == 0);
    CHECK(r2.satisfied);
    CHECK_FALSE(r2.equality_case);

    const auto r3 = verify_descartes(mq({Rat(1), Rat(0)}));
    CHECK(r3.pos == 0);
    CHECK(r3.c == 0);
    CHECK(r3.satisfied);
}

TEST_CASE("moduli order is invariant under positive dilatations") {
    for (int trial = 0; trial < 50; ++trial) {
        SplitMix64 rng = stream_rng(5, static_cast<std::uint64_t>(trial));
        std::vector<std::pair<Rat, int>> roots;
        const int d = 2 + static_cast<int>(rng.below(4));
        for (int i = 0; i < d; ++i) {
            const Rat r(static_cast<long>(rng.below(19)) - 9, static_cast<long>(rng.below(3)) + 1);
            bool dup = false;
            for (auto& [e, m] : roots)
                if (e == r) dup = true;
            if (!dup) roots.emplace_back(r, 1);
        }
        const MonicQ p = expand_roots(roots);
        const std::string base = moduli_order(all_roots(p)).str();
        for (const Rat& t : {Rat(3, 2), Rat(2), Rat(1, 5)}) {
            CHECK(moduli_order(all_roots(p.dilate(t))).str() == base);
        }
    }
}

TEST_CASE("hyperbolic polynomials with nonzero constant term have no consecutive zero coefficients") {
    for (int trial = 0; trial < 100; ++trial) {
        SplitMix64 rng = stream_rng(23, static_cast<std::uint64_t>(trial));
        std::vector<std::pair<Rat, int>> roots;
        const int d = 2 + static_cast<int>(rng.below(5));
        for (int i = 0; i < d; ++i) {
            const long num = static_cast<long>(rng.below(19)) - 9;
            if (num == 0) continue;  // keep the constant term nonzero
            roots.emplace_back(Rat(num, static_cast<long>(rng.below(3)) + 1), 1);
        }
        if (roots.empty()) continue;
        CHECK(no_consecutive_zeros(expand_roots(roots)));
    }
}
