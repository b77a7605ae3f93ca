#pragma once

// Shared test utilities: independent oracles and deterministic generators.
// The brute-force order oracle multiplies residues one step at a time and
// must stay independent of the divide-out implementation it checks.

#include <cstdint>
#include <string>
#include <vector>

#include "ordena/arith.hpp"
#include "ordena/base.hpp"
#include "ordena/density.hpp"
#include "ordena/modmath.hpp"
#include "ordena/order.hpp"
#include "ordena/sieve.hpp"

namespace testsupport {

using ordena::Base;
using ordena::BigInt;
using ordena::FactoredInteger;
using ordena::Rational;

inline Rational R(const std::string& s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, pos)), BigInt(s.substr(pos + 1)));
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// residue of g modulo u, computed with plain modular arithmetic
inline std::uint64_t residue_of(const Base& g, std::uint64_t u) {
  if (u == 1) return 0;
  std::uint64_t num = 1, den = 1;
  for (const auto& f : g.num.factors)
    num = ordena::mulmod_u64(num, ordena::powmod_u64(f.prime % u, f.exponent, u), u);
  for (const auto& f : g.den.factors)
    den = ordena::mulmod_u64(den, ordena::powmod_u64(f.prime % u, f.exponent, u), u);
  std::uint64_t res = ordena::mulmod_u64(num, ordena::invmod_u64(den, u), u);
  if (g.sign < 0) res = (u - res) % u;
  return res;
}

// order by stepwise multiplication: the smallest t >= 1 with g^t = 1 (mod u)
inline std::uint64_t brute_order(const Base& g, std::uint64_t u) {
  if (u <= 2) return 1;
  std::uint64_t res = residue_of(g, u);
  std::uint64_t cur = res;
  std::uint64_t t = 1;
  while (cur != 1) {
    cur = ordena::mulmod_u64(cur, res, u);
    ++t;
  }
  return t;
}

// membership per element, straight from multiplicative_order
inline std::vector<std::uint8_t> naive_membership(const Base& g, const FactoredInteger& m,
                                                  std::uint64_t x, ordena::CountMode mode) {
  std::vector<std::uint8_t> out(x + 1, 0);
  ordena::OrderCalculator calc(g);
  const bool primes_only = ordena::is_prime_mode(mode);
  for (std::uint64_t u = 1; u <= x; ++u) {
    if (primes_only && !ordena::is_prime_u64(u)) continue;
    if (!ordena::in_S(g, u)) continue;
    std::uint64_t ord = calc.order(u);
    bool all_divide = true, none_divide = true, coprime = true;
    for (const auto& f : m.factors) {
      std::uint64_t pe = 1;
      for (std::uint64_t i = 0; i < f.exponent; ++i) pe *= f.prime;
      if (ord % pe == 0)
        none_divide = false;
      else
        all_divide = false;
      if (u % f.prime == 0) coprime = false;
    }
    bool member = false;
    switch (mode) {
      case ordena::CountMode::N: member = !all_divide; break;
      case ordena::CountMode::NPrime: member = none_divide; break;
      case ordena::CountMode::NDoublePrime: member = none_divide && coprime; break;
      case ordena::CountMode::P: member = all_divide; break;
      case ordena::CountMode::PPrime: member = none_divide; break;
    }
    out[u] = member ? 1 : 0;
  }
  return out;
}

// deterministic mixed bag of bases: both signs, h over generator-set
// members, their divisors and non-divisors
inline Base random_base(std::uint64_t& state) {
  static const char* kRoots[] = {"2",   "3",   "5",   "6",    "7",   "10",
                                 "11",  "13",  "2/3", "3/5",  "5/7", "10/3",
                                 "15",  "21",  "30",  "12/35"};
  static const std::uint64_t kH[] = {1,    2,    3,    4,     5,     6,     8,     9,
                                     12,   16,   25,   27,    32,    49,    121,   125,
                                     147,  500,  1000, 2000,  4000,  8000,  96800, 104544,
                                     98000, 165375, 193600, 209088};
  std::string text;
  if (splitmix64(state) % 2 == 0) text += "-";
  text += kRoots[splitmix64(state) % (sizeof(kRoots) / sizeof(kRoots[0]))];
  std::uint64_t h;
  if (splitmix64(state) % 4 == 0)
    h = 1 + splitmix64(state) % 400;
  else
    h = kH[splitmix64(state) % (sizeof(kH) / sizeof(kH[0]))];
  if (h > 1) text += "^" + std::to_string(h);
  return ordena::parse_base(text);
}

inline FactoredInteger F(std::uint64_t n) { return ordena::factorize(n); }

}  // namespace testsupport
