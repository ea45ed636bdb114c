#include "hypatlas/rational.hpp"

#include <cctype>
#include <cmath>

namespace hypatlas {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    return Rat(x);  // exact: doubles are dyadic rationals
}

static bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// decimal-only construction; a leading zero must not trigger octal parsing
static Int int_from_decimal(std::string_view s) {
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    while (i + 1 < s.size() && s[i] == '0') ++i;
    Int v{std::string(s.substr(i))};
    return neg ? Int(-v) : v;
}

std::optional<Rat> parse_rational(std::string_view s) {
    const size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_token(s)) return std::nullopt;
        return Rat(int_from_decimal(s));
    }
    const std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    const Int d = int_from_decimal(den);
    if (d.is_zero()) return std::nullopt;
    return Rat(int_from_decimal(num), d);
}

std::optional<Rat> parse_rational_or_decimal(std::string_view s) {
    if (auto r = parse_rational(s)) return r;
    // decimal form: [sign] digits [. digits] [e[sign]digits]
    std::string mantissa;
    long exp10 = 0;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    bool any_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mantissa.push_back(ch);
            if (seen_dot) --exp10;
            any_digit = true;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((ch == 'e' || ch == 'E') && any_digit) {
            const std::string_view tail = s.substr(i + 1);
            if (!is_integer_token(tail)) return std::nullopt;
            exp10 += std::stol(std::string(tail));
            i = s.size() - 1;
            break;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    Rat v{int_from_decimal(mantissa.empty() ? "0" : mantissa)};
    Int p10 = 1;
    for (long k = 0; k < std::labs(exp10); ++k) p10 *= 10;
    if (exp10 >= 0)
        v *= Rat(p10);
    else
        v /= Rat(p10);
    return neg ? Rat(-v) : v;
}

std::string to_string(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace hypatlas
