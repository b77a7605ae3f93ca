#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ordena {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "a/b" in lowest terms, plain "a" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

inline std::string to_string(const BigInt& n) { return n.str(); }

// base^exp for possibly negative exp (base != 0 when exp < 0).
inline Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  BigInt n = numerator(base);
  BigInt d = denominator(base);
  unsigned long e = exp > 0 ? static_cast<unsigned long>(exp) : static_cast<unsigned long>(-exp);
  BigInt np = boost::multiprecision::pow(n, e);
  BigInt dp = boost::multiprecision::pow(d, e);
  return exp > 0 ? Rational(np, dp) : Rational(dp, np);
}

}  // namespace ordena
