#pragma once

#include <cstdint>
#include <vector>

#include "ordena/arith.hpp"
#include "ordena/base.hpp"
#include "ordena/rational.hpp"

namespace ordena {

// C(q,n) = q^{2-n} / (q^2 - 1); q prime, n >= 1.
Rational cap_C(std::uint64_t q, std::uint64_t n);

// gamma = max(0, nu_2(D(g0)) - nu_2(d) - nu_2(h)); d must be even. Always <= 2.
int table_gamma(const Base& g, const FactoredInteger& d);

// epsilon_g(d) by table row (sign of g) and gamma; d must be even.
Rational epsilon(const Base& g, const FactoredInteger& d);
// Same but always the g > 0 row (epsilon_{|g|}).
Rational epsilon_abs(const Base& g, const FactoredInteger& d);

// The five-case factor in the explicit density formula.
Rational epsilon_prime(const Base& g, const FactoredInteger& d);

// Density of primes p in S(g) with d | ord_g(p):
//   delta_g(d) = epsilon'(d) / (d * gcd(h, d^inf)) * prod_{p|d} p^2/(p^2-1),
// with delta_g(1) = 1.
Rational delta(const Base& g, const FactoredInteger& d);

// delta'_g(m) = sum over unitary divisors j of m of mu(kappa(j)) * delta_g(j).
Rational delta_prime(const Base& g, const FactoredInteger& m);

// Minimum of delta_g over the prime-power components of m; m >= 2.
Rational gamma_min(const Base& g, const FactoredInteger& m);

// Sorted distinct values 1 - delta'_g(j) over unitary divisors j > 1 of m;
// the first element equals gamma_min(g, m). m >= 2.
std::vector<Rational> exponent_spectrum(const Base& g, const FactoredInteger& m);

}  // namespace ordena
