#include "ordena/density.hpp"

#include <algorithm>

#include "ordena/errors.hpp"

namespace ordena {

namespace {

std::uint64_t nu2(const FactoredInteger& n) { return n.exponent_of(2); }

bool divides(const BigInt& a, const BigInt& b) { return b % a == 0; }

Rational epsilon_row_positive(int gamma) {
  switch (gamma) {
    case 0: return Rational(-1, 2);
    case 1: return Rational(1, 4);
    default: return Rational(1, 16);
  }
}

Rational epsilon_row_negative(int gamma) {
  switch (gamma) {
    case 0: return Rational(1, 4);
    case 1: return Rational(-1, 2);
    default: return Rational(1, 16);
  }
}

}  // namespace

Rational cap_C(std::uint64_t q, std::uint64_t n) {
  if (!is_prime_u64(q)) fail(Errc::invalid_argument, "cap_C: q must be prime");
  if (n < 1) fail(Errc::invalid_argument, "cap_C: n must be >= 1");
  BigInt qq(q);
  BigInt den = qq * qq - 1;
  if (n <= 2)
    return Rational(boost::multiprecision::pow(qq, static_cast<unsigned long>(2 - n)), den);
  return Rational(1, boost::multiprecision::pow(qq, static_cast<unsigned long>(n - 2)) * den);
}

int table_gamma(const Base& g, const FactoredInteger& d) {
  if (nu2(d) == 0) fail(Errc::domain, "table_gamma: d must be even");
  std::int64_t v = 0;
  for (BigInt D = g.disc; D % 2 == 0; D /= 2) ++v;  // nu_2(D) <= 3
  v -= static_cast<std::int64_t>(nu2(d));
  v -= static_cast<std::int64_t>(g.nu2_h());
  return v < 0 ? 0 : static_cast<int>(v);
}

Rational epsilon(const Base& g, const FactoredInteger& d) {
  int gamma = table_gamma(g, d);
  return g.positive() ? epsilon_row_positive(gamma) : epsilon_row_negative(gamma);
}

Rational epsilon_abs(const Base& g, const FactoredInteger& d) {
  return epsilon_row_positive(table_gamma(g, d));
}

Rational epsilon_prime(const Base& g, const FactoredInteger& d) {
  std::uint64_t v2d = nu2(d);
  if (v2d == 0) return Rational(1);
  bool disc_divides = divides(g.disc, 4 * d.value);
  if (v2d == 1) {
    Rational value(1);
    if (!g.positive()) {
      BigInt twop = BigInt(1) << static_cast<unsigned>(g.nu2_h());
      value += Rational(3 * 2 * (twop - 1), 4);
    }
    if (disc_divides) value += epsilon(g, d);
    return value;
  }
  return disc_divides ? Rational(1) + epsilon_abs(g, d) : Rational(1);
}

Rational delta(const Base& g, const FactoredInteger& d) {
  if (d.is_one()) return Rational(1);
  Rational value = epsilon_prime(g, d);
  value /= Rational(d.value * gcd_supernatural(BigInt(g.h), d));
  for (const auto& f : d.factors) {
    BigInt p2 = BigInt(f.prime) * f.prime;
    value *= Rational(p2, p2 - 1);
  }
  return value;
}

Rational delta_prime(const Base& g, const FactoredInteger& m) {
  Rational sum(0);
  for (const auto& j : unitary_divisors(m)) sum += mobius(kappa(j)) * delta(g, j);
  return sum;
}

Rational gamma_min(const Base& g, const FactoredInteger& m) {
  if (m.is_one()) fail(Errc::domain, "gamma_min: undefined for m = 1 (empty minimum)");
  bool first = true;
  Rational best;
  for (const auto& f : m.factors) {
    Rational v = delta(g, from_prime_powers({{f.prime, f.exponent}}));
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return best;
}

std::vector<Rational> exponent_spectrum(const Base& g, const FactoredInteger& m) {
  if (m.is_one()) fail(Errc::domain, "exponent_spectrum: undefined for m = 1");
  std::vector<Rational> values;
  for (const auto& j : unitary_divisors(m)) {
    if (j.is_one()) continue;
    values.push_back(Rational(1) - delta_prime(g, j));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace ordena
