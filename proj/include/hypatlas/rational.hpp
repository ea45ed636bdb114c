#ifndef HYPATLAS_RATIONAL_HPP
#define HYPATLAS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace hypatlas {

// expression templates off: arithmetic yields plain values
using Int = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline int sgn(const Rat& x) { return x.sign(); }
inline int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Exact conversion; doubles are dyadic rationals.
Rat rat_from_double(double x);

// Accepts "p", "-p", "p/q".  Fails on decimal notation.
std::optional<Rat> parse_rational(std::string_view s);

// Accepts everything parse_rational does plus finite decimals ("1.25" -> 5/4)
// and exponents ("2.5e-3").  Used where an exact coordinate is wanted but a
// decimal spelling is convenient (figure slice parameters, ranges).
std::optional<Rat> parse_rational_or_decimal(std::string_view s);

std::string to_string(const Rat& x);

}  // namespace hypatlas

#endif
