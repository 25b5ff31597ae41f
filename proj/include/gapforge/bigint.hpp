#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gapforge/common.hpp"

namespace gapforge {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const BigRat& r) { return boost::multiprecision::denominator(r); }

inline bool rat_is_integer(const BigRat& r) { return rat_den(r) == 1; }

inline double rat_to_double(const BigRat& r) { return r.convert_to<double>(); }
inline long double rat_to_ldouble(const BigRat& r) { return r.convert_to<long double>(); }

// "num/den", or just "num" for integers. Inverse of rat_from_string.
inline std::string rat_to_string(const BigRat& r) {
  if (rat_is_integer(r)) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Parses an optionally signed decimal literal ("3", "-2.25", "1e3" is NOT
// accepted here) into an exact rational.
inline BigRat rat_from_decimal(std::string_view text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  BigInt scale = 1;
  bool any_digit = false, seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) scale *= 10;
      any_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      throw DomainError("bad decimal literal: '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw DomainError("bad decimal literal: '" + std::string(text) + "'");
  BigRat r(mantissa, scale);
  return neg ? BigRat(-r) : r;
}

// Accepts "num/den" or a decimal literal.
inline BigRat rat_from_string(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return rat_from_decimal(text);
  BigRat num = rat_from_decimal(text.substr(0, slash));
  BigRat den = rat_from_decimal(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
  return num / den;
}

// Total number of significant bits in numerator and denominator.
inline u64 rat_bit_length(const BigRat& r) {
  BigInt n = rat_num(r);
  BigInt d = rat_den(r);
  u64 bits = 0;
  if (n != 0) bits += boost::multiprecision::msb(boost::multiprecision::abs(n)) + 1;
  if (d != 0) bits += boost::multiprecision::msb(d) + 1;
  return bits;
}

}  // namespace gapforge
