#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace trianglecount {

// All integer and rational arithmetic in this library is arbitrary precision
// and exact.  boost::multiprecision keeps cpp_rational normalised for us:
// gcd(|num|, den) = 1 and den > 0 hold after every operation.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical printing: "p/q" with q > 0 and gcd(p,q) = 1, plain "p" for
// integers.  Every rational the CLI emits goes through here.
inline std::string rat_str(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "-p", "p/q".  Whole-string match; whitespace is not consumed.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    throw parse_error("bad rational '" + std::string(text) + "': " + why);
  };
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&]() -> Integer {
    if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected digits");
    Integer value = 0;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      ++pos;
    }
    return value;
  };
  Integer num = digits();
  Integer den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = digits();
    if (den == 0) fail("zero denominator");
  }
  if (pos != text.size()) fail("trailing characters");
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

}  // namespace trianglecount
