#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ordena/base.hpp"

namespace ordena {

// Multiplicative orders of a fixed rational base modulo 64-bit integers.
// Orders are found by the divide-out algorithm on carmichael(u), memoized
// per prime-power modulus; a composite modulus takes the lcm of its
// prime-power components. Not thread-safe: give each worker its own
// calculator (results are identical either way).
class OrderCalculator {
 public:
  explicit OrderCalculator(const Base& g);

  // Least t >= 1 with g^t = 1 mod u. Errors if u is not in S(g).
  std::uint64_t order(std::uint64_t u);

  std::uint64_t order_prime_power(std::uint64_t p, unsigned k);

  // min(cap, nu_q(ord_g(u))); q prime.
  unsigned order_valuation(std::uint64_t u, std::uint64_t q, unsigned cap);

  // Residue of g modulo m, for m in S(g).
  std::uint64_t residue(std::uint64_t m) const;

  const Base& base() const { return *g_; }

 private:
  const Base* g_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;  // prime power -> ord
};

std::uint64_t multiplicative_order(const Base& g, std::uint64_t u);
unsigned order_valuation(const Base& g, std::uint64_t u, std::uint64_t p, unsigned cap);

}  // namespace ordena
