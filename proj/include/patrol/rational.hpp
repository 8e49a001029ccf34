// Exact rational arithmetic used for every length, time and probability.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace patrol {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "3", "-2.75", "1/3" or "1.5e2" into an exact rational.
/// Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when integral) representation.
std::string to_string(const Rational& value);

/// Fixed-point decimal with the given number of places.
std::string to_decimal(const Rational& value, int places = 12);

double to_double(const Rational& value);

/// Nearest rational with denominator `denominator` (used to lift sampled doubles).
Rational from_double(double value, long denominator = 1L << 20);

inline Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Floor of a rational as a (multiprecision) integer-valued rational.
Rational floor(const Rational& v);

/// Reduces `t` into [0, period).
Rational mod(const Rational& t, const Rational& period);

/// `std::nullopt` stands for +infinity (girth of a tree).
using ExtendedLength = std::optional<Rational>;

std::string to_string(const ExtendedLength& value);

}  // namespace patrol
