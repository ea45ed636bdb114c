#include "hypatlas/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hypatlas {

std::string SignPattern::str() const {
    std::string out = "(";
    for (size_t i = 0; i < signs.size(); ++i) {
        if (i) out += ',';
        out += signs[i] > 0 ? '+' : (signs[i] < 0 ? '-' : '0');
    }
    out += ')';
    return out;
}

std::optional<SignPattern> SignPattern::parse(std::string_view s) {
    SignPattern sp;
    for (char ch : s) {
        switch (ch) {
            case '+': sp.signs.push_back(1); break;
            case '-': sp.signs.push_back(-1); break;
            case '0': sp.signs.push_back(0); break;
            case '(': case ')': case ',': case ' ': break;
            default: return std::nullopt;
        }
    }
    if (sp.signs.size() < 2 || sp.signs.front() != 1) return std::nullopt;
    return sp;
}

DescartesCounts descartes_counts(const SignPattern& sp) {
    DescartesCounts dc;
    int prev = 0;
    for (int s : sp.signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++dc.c;
        prev = s;
    }
    if (!sp.has_zeros()) {
        int p = 0;
        for (size_t i = 1; i < sp.signs.size(); ++i) p += (sp.signs[i] == sp.signs[i - 1]);
        dc.p = p;
    }
    // reflected sequence: the coefficient of x^k picks up (-1)^k
    const int d = sp.degree();
    prev = 0;
    for (size_t i = 0; i < sp.signs.size(); ++i) {
        int s = sp.signs[i];
        if (s == 0) continue;
        if ((d - static_cast<int>(i)) % 2 != 0) s = -s;
        if (prev != 0 && s != prev) ++dc.c_prime;
        prev = s;
    }
    return dc;
}

namespace {

int letter_rank(MoLetter l) {
    switch (l) {
        case MoLetter::Zero: return 0;
        case MoLetter::P: return 1;
        case MoLetter::N: return 2;
    }
    return 3;
}

}  // namespace

ModuliOrder ModuliOrder::normalized() const {
    ModuliOrder out;
    size_t i = 0;
    while (i < letters.size()) {
        size_t j = i + 1;
        while (j < letters.size() && equal_to_prev[j - 1]) ++j;
        std::vector<MoLetter> group(letters.begin() + static_cast<long>(i), letters.begin() + static_cast<long>(j));
        std::sort(group.begin(), group.end(), [](MoLetter a, MoLetter b) { return letter_rank(a) < letter_rank(b); });
        for (size_t k = 0; k < group.size(); ++k) {
            if (!out.letters.empty()) out.equal_to_prev.push_back(k > 0);
            out.letters.push_back(group[k]);
        }
        i = j;
    }
    return out;
}

std::string ModuliOrder::str() const {
    const ModuliOrder n = normalized();
    std::string out;
    for (size_t i = 0; i < n.letters.size(); ++i) {
        if (i) out += n.equal_to_prev[i - 1] ? '=' : '<';
        switch (n.letters[i]) {
            case MoLetter::Zero: out += '0'; break;
            case MoLetter::P: out += 'P'; break;
            case MoLetter::N: out += 'N'; break;
        }
    }
    return out;
}

std::optional<ModuliOrder> ModuliOrder::parse(std::string_view s) {
    ModuliOrder mo;
    bool expect_letter = true;
    for (char ch : s) {
        if (ch == ' ') continue;
        if (expect_letter) {
            switch (ch) {
                case 'P': mo.letters.push_back(MoLetter::P); break;
                case 'N': mo.letters.push_back(MoLetter::N); break;
                case '0': mo.letters.push_back(MoLetter::Zero); break;
                default: return std::nullopt;
            }
            expect_letter = false;
        } else {
            if (ch == '<')
                mo.equal_to_prev.push_back(false);
            else if (ch == '=')
                mo.equal_to_prev.push_back(true);
            else
                return std::nullopt;
            expect_letter = true;
        }
    }
    if (mo.letters.empty() || expect_letter) return std::nullopt;
    return mo;
}

ModuliOrder moduli_order(const RootMultiset& roots, double tol) {
    for (const auto& r : roots.entries)
        if (r.tag == RootTag::ComplexPair)
            throw std::domain_error("moduli_order: complex roots present");

    // group id -> letters
    std::map<int, std::vector<MoLetter>> groups;
    const bool exact = roots.certified;
    if (exact) {
        for (const auto& r : roots.entries) {
            if (r.modulus_group < 0) throw std::logic_error("moduli_order: exact entries lack modulus groups");
            MoLetter l = MoLetter::P;
            if (r.exact_value && r.exact_value->is_zero())
                l = MoLetter::Zero;
            else if ((r.exact_value && *r.exact_value < 0) || (!r.exact_value && r.enclosure->second <= 0))
                l = MoLetter::N;
            for (int m = 0; m < r.multiplicity; ++m) groups[r.modulus_group].push_back(l);
        }
    } else {
        std::vector<const Root*> sorted;
        for (const auto& r : roots.entries) sorted.push_back(&r);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Root* a, const Root* b) { return std::fabs(a->value) < std::fabs(b->value); });
        int gid = -1;
        double prev_mod = -1.0;
        for (const Root* r : sorted) {
            const double m = std::fabs(r->value);
            if (gid < 0 || m - prev_mod > tol * (1.0 + prev_mod)) ++gid;
            prev_mod = m;
            MoLetter l = MoLetter::P;
            if (m <= tol)
                l = MoLetter::Zero;
            else if (r->value < 0)
                l = MoLetter::N;
            for (int k = 0; k < r->multiplicity; ++k) groups[gid].push_back(l);
        }
    }

    ModuliOrder mo;
    for (auto& [gid, letters] : groups) {
        std::sort(letters.begin(), letters.end(), [](MoLetter a, MoLetter b) { return letter_rank(a) < letter_rank(b); });
        for (size_t k = 0; k < letters.size(); ++k) {
            if (!mo.letters.empty()) mo.equal_to_prev.push_back(k > 0);
            mo.letters.push_back(letters[k]);
        }
    }
    return mo;
}

ModuliOrder canonical_mo(const SignPattern& sp) {
    if (sp.has_zeros()) throw std::domain_error("canonical_mo: sign pattern contains zeros");
    ModuliOrder mo;
    const auto& s = sp.signs;
    for (size_t i = s.size() - 1; i >= 1; --i) {
        if (!mo.letters.empty()) mo.equal_to_prev.push_back(false);
        mo.letters.push_back(s[i] == s[i - 1] ? MoLetter::N : MoLetter::P);
    }
    return mo;
}

namespace {

DescartesReport descartes_from(const SignPattern& sp, int pos, int neg, bool hyperbolic, bool certified) {
    DescartesReport rep;
    rep.certified = certified;
    rep.pos = pos;
    rep.neg = neg;
    const DescartesCounts dc = descartes_counts(sp);
    rep.c = dc.c;
    rep.p = dc.p;
    rep.satisfied = (pos <= dc.c) && ((dc.c - pos) % 2 == 0) && (neg <= dc.c_prime) && ((dc.c_prime - neg) % 2 == 0);
    rep.equality_case = hyperbolic && !sp.has_zeros();
    if (rep.equality_case && (pos != dc.c || !dc.p || neg != *dc.p)) rep.satisfied = false;
    return rep;
}

}  // namespace

DescartesReport verify_descartes(const MonicQ& p) {
    const RootMultiset roots = all_roots(p);
    int pos = 0, neg = 0;
    bool hyperbolic = true;
    for (const auto& r : roots.entries) {
        if (r.tag == RootTag::ComplexPair) {
            hyperbolic = false;
            continue;
        }
        const int s = r.exact_value ? sgn(*r.exact_value) : (r.enclosure->second <= 0 ? -1 : 1);
        if (s > 0) pos += r.multiplicity;
        if (s < 0) neg += r.multiplicity;
    }
    return descartes_from(sign_pattern(p), pos, neg, hyperbolic, true);
}

DescartesReport verify_descartes_from_roots(const std::vector<double>& roots, const MonicD& expanded) {
    int pos = 0, neg = 0;
    for (double r : roots) {
        if (r > 0) ++pos;
        if (r < 0) ++neg;
    }
    return descartes_from(sign_pattern(expanded), pos, neg, /*hyperbolic=*/true, /*certified=*/false);
}

}  // namespace hypatlas
