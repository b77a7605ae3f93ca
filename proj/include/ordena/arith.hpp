#pragma once

#include <cstdint>
#include <vector>

#include "ordena/rational.hpp"

namespace ordena {

struct PrimePower {
  std::uint64_t prime;
  std::uint64_t exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer carried together with its full prime factorization.
// Primes are strictly increasing, every exponent is >= 1, and the product
// of prime^exponent equals value (value 1 has an empty factor list).
struct FactoredInteger {
  BigInt value;
  std::vector<PrimePower> factors;

  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.value == b.value;
  }
  friend auto operator<=>(const FactoredInteger& a, const FactoredInteger& b) {
    return a.value.compare(b.value) <=> 0;
  }

  std::uint64_t omega() const { return factors.size(); }
  bool is_one() const { return factors.empty(); }
  std::uint64_t exponent_of(std::uint64_t p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }
};

bool is_prime_u64(std::uint64_t n);

// Smallest-prime-factor table: spf[u] is the least prime dividing u, for
// 2 <= u <= limit (spf[p] = p for primes). Backs the small-input fast path
// of factorize and with it the exact-layer order computations.
struct SpfTable {
  std::uint32_t limit = 0;
  std::vector<std::uint32_t> spf;

  explicit SpfTable(std::uint32_t limit);
  std::uint32_t operator[](std::uint32_t u) const { return spf[u]; }
  FactoredInteger factorize(std::uint32_t n) const;
};

// Deterministic factorization: SPF lookup for small n, trial division below
// 10^6, then Brent-Pollard rho with a Miller-Rabin certificate for 64-bit
// cofactors.
FactoredInteger factorize(std::uint64_t n);
FactoredInteger factorize(const BigInt& n);

// Builds the FactoredInteger from already-known prime powers (sorted, distinct).
FactoredInteger from_prime_powers(std::vector<PrimePower> factors);

int mobius(const FactoredInteger& n);

// Squarefree kernel: product of the distinct primes dividing n.
FactoredInteger kappa(const FactoredInteger& n);

// Largest k with p^k | n; p must be prime.
std::uint64_t valuation(std::uint64_t p, const BigInt& n);
std::uint64_t valuation_unchecked(std::uint64_t p, std::uint64_t n);

// All 2^omega(m) divisors d with gcd(d, m/d) = 1, ascending.
std::vector<FactoredInteger> unitary_divisors(const FactoredInteger& m);

// gcd(h, d^infinity) = prod_{p | d} p^{nu_p(h)}.
BigInt gcd_supernatural(const BigInt& h, const FactoredInteger& d);

// Exponent of the unit group modulo u (Carmichael lambda).
BigInt carmichael(const FactoredInteger& u);
std::uint64_t carmichael_u64(std::uint64_t u);

// Primes <= limit, ascending (simple sieve; limit is a table size, keep it modest).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

}  // namespace ordena
