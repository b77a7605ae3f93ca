#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ordena/arith.hpp"

namespace ordena {

// A rational base g decomposed as sign * g0^h with g0 > 0 not an exact power
// and h as large as possible. Everything per-g lives here: the reduced
// magnitude num/den, the power-free root g0, the discriminant D(g0) of
// Q(sqrt(g0)), and the tau parameters.
struct Base {
  int sign = 1;                  // +1 or -1
  FactoredInteger num, den;      // |g| = num/den, coprime
  FactoredInteger g0_num, g0_den;
  std::uint64_t h = 1;
  BigInt disc;                   // D(g0)
  int tau1 = 0, tau2 = 0;
  std::vector<std::uint64_t> support;  // primes dividing num*den, ascending
  std::string text;              // canonical input form, for display

  bool positive() const { return sign > 0; }
  std::uint64_t nu2_h() const;
};

// Grammar: [-] INT [/ INT] [^ INT]. The exponent applies to the magnitude,
// a leading minus to the whole value. The written exponent is folded into h
// without expanding the power.
Base parse_base(const std::string& text);

// Discriminant of Q(sqrt(g0_num/g0_den)): the squarefree kernel k of
// g0_num*g0_den, or 4k when k is not 1 mod 4. Errors if g0 is a square.
BigInt discriminant(const FactoredInteger& g0_num, const FactoredInteger& g0_den);

// tau1 = 1 iff D(g0) = 8; tau2 = tau1 + (1 - sign)/2.
std::pair<int, int> tau(const Base& g);

// u composed only of primes absent from g's numerator and denominator.
bool in_S(const Base& g, std::uint64_t u);
bool in_S(const Base& g, const BigInt& u);

}  // namespace ordena
