#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ordena/base.hpp"
#include "ordena/density.hpp"

namespace ordena {

// Counting predicates over u <= x in S(g), m = p_1^{e_1} ... p_r^{e_r}:
//   N             m does not divide ord_g(u)
//   NPrime        p_j^{e_j} does not divide ord_g(u) for every j
//   NDoublePrime  NPrime and gcd(u, m) = 1
//   P             primes only, m | ord_g(p)
//   PPrime        primes only, p_j^{e_j} never divides ord_g(p)
enum class CountMode { N, NPrime, NDoublePrime, P, PPrime };

CountMode parse_count_mode(const std::string& name);
const char* count_mode_name(CountMode mode);
bool is_prime_mode(CountMode mode);

struct SieveOptions {
  int threads = 1;
  std::uint64_t memory_mb = 0;      // 0: take ORDENA_MEM_MB from the environment, default 2048
  std::uint64_t segment_size = 0;   // 0: default 2^22 moduli, shrunk to fit the budget
};

struct CountTable {
  CountMode mode{};
  std::string base_text;
  BigInt modulus;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> checkpoints;  // (x, count), x ascending
  Rational predicted_exponent;
};

// Geometric grid of n points ending exactly at x (deduplicated, ascending).
std::vector<std::uint64_t> checkpoint_grid(std::uint64_t x, unsigned n);

CountTable count_series(const Base& g, const FactoredInteger& m, std::uint64_t x, CountMode mode,
                        unsigned checkpoints, const SieveOptions& opts = {});

struct IdentityRow {
  std::uint64_t x;
  std::uint64_t lhs;
  std::vector<std::int64_t> terms;  // signed contributions, one per divisor
  std::int64_t rhs;
  bool ok;
};

struct IdentityReport {
  bool passed;
  std::vector<BigInt> divisors;  // term order, ascending
  std::vector<int> signs;        // +1 / -1 matching divisors
  std::vector<IdentityRow> rows;
};

// N(x;g,m) = -sum over unitary d > 1 of mu(kappa(d)) N'(x;g,d), checked as
// an exact integer identity at every checkpoint.
IdentityReport verify_lemma2(const Base& g, const FactoredInteger& m, std::uint64_t x,
                             unsigned checkpoints = 1, const SieveOptions& opts = {});

// P'(x;g,d) = sum over unitary j of mu(kappa(j)) P_g(j)(x), exact.
IdentityReport verify_prime_inclusion_exclusion(const Base& g, const FactoredInteger& d,
                                                std::uint64_t x, unsigned checkpoints = 1,
                                                const SieveOptions& opts = {});

struct MultiplicativityReport {
  bool passed;
  std::uint64_t trials;
  struct Counterexample {
    std::uint64_t u, v;
    bool member_u, member_v, member_uv;
  };
  std::vector<Counterexample> failures;
};

// Random pairs u*v <= x with u, v in S(g) and gcd(uv, m) = 1: the counted
// set is completely multiplicative, so membership(uv) = membership(u) AND
// membership(v) must hold exactly.
MultiplicativityReport check_complete_multiplicativity(const Base& g, const FactoredInteger& m,
                                                       std::uint64_t x, std::uint64_t trials,
                                                       std::uint64_t seed = 0x5eed);

struct CongruenceReport {
  bool passed;
  std::uint64_t primes_checked;
  std::vector<std::uint64_t> mismatches;
};

// For squarefree d: p <= x counts toward P'(x;g,d) iff g^{dy} = g (mod p)
// has a solution y, checked by enumerating y modulo ord_g(p).
CongruenceReport congruence_characterization(const Base& g, const FactoredInteger& d,
                                             std::uint64_t x);

// Principal-value logarithmic integral from 0; requires x >= 2.
double logarithmic_integral(double x);

// Diagnostic normalization per checkpoint: count * log^e(x) / x for integer
// modes, count / (e * Li(x)) for prime modes (e = predicted exponent).
// Rows with x < 2 are dropped. Never used in exact comparisons.
std::vector<std::pair<std::uint64_t, double>> normalized_series(const CountTable& table);

// Per-element membership from the sieve machinery (index u, 0/1); used to
// cross-check against the naive per-element order loop.
std::vector<std::uint8_t> sieve_membership(const Base& g, const FactoredInteger& m,
                                           std::uint64_t x, CountMode mode,
                                           const SieveOptions& opts = {});

std::uint64_t count_primes(std::uint64_t x);

}  // namespace ordena
