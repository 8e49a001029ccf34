#include "patrol/rational.hpp"

#include <cctype>
#include <cmath>

#include "patrol/errors.hpp"

namespace patrol {
namespace {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("expected digits in number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("invalid character in number '" + std::string(whole) + "'");
    }
  }
  return Integer(std::string(digits));
}

Integer pow10(long exponent) {
  Integer result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    Integer den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      Integer magnitude = parse_integer(exp_text, whole);
      if (magnitude > 1000) throw ParseError("exponent too large in '" + std::string(whole) + "'");
      exponent = magnitude.convert_to<long>() * (exp_negative ? -1 : 1);
      text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw ParseError("invalid number '" + std::string(whole) + "'");
    Integer mantissa = int_part.empty() ? Integer(0) : parse_integer(int_part, whole);
    if (!frac_part.empty()) mantissa = mantissa * pow10(static_cast<long>(frac_part.size())) + parse_integer(frac_part, whole);
    exponent -= static_cast<long>(frac_part.size());
    value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_decimal(const Rational& value, int places) {
  Integer scale = pow10(places);
  Rational scaled = abs(value) * Rational(scale);
  // round half up
  Integer q = numerator(scaled) / denominator(scaled);
  Integer r = numerator(scaled) % denominator(scaled);
  if (2 * r >= denominator(scaled)) q += 1;
  std::string digits = q.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
  }
  if (value < 0 && q != 0) digits.insert(0, "-");
  return digits;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value, long denominator) {
  return Rational(static_cast<long long>(std::llround(value * static_cast<double>(denominator))),
                  static_cast<long long>(denominator));
}

Rational floor(const Rational& v) {
  Integer q = numerator(v) / denominator(v);  // truncates toward zero
  if (v < 0 && q * denominator(v) != numerator(v)) q -= 1;
  return Rational(q);
}

Rational mod(const Rational& t, const Rational& period) {
  Rational r = t - floor(t / period) * period;
  return r;
}

std::string to_string(const ExtendedLength& value) { return value ? to_string(*value) : std::string("inf"); }

}  // namespace patrol
