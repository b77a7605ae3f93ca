#include "ordena/order.hpp"

#include <numeric>

#include "ordena/errors.hpp"
#include "ordena/modmath.hpp"

namespace ordena {

namespace {

std::uint64_t pow_u64(std::uint64_t p, unsigned k) {
  std::uint64_t v = 1;
  while (k--) v *= p;
  return v;
}

}  // namespace

OrderCalculator::OrderCalculator(const Base& g) : g_(&g) {}

std::uint64_t OrderCalculator::residue(std::uint64_t m) const {
  if (m == 1) return 0;
  std::uint64_t num = 1, den = 1;
  for (const auto& f : g_->num.factors)
    num = mulmod_u64(num, powmod_u64(f.prime % m, f.exponent, m), m);
  for (const auto& f : g_->den.factors)
    den = mulmod_u64(den, powmod_u64(f.prime % m, f.exponent, m), m);
  std::uint64_t res = mulmod_u64(num, invmod_u64(den, m), m);
  if (g_->sign < 0) res = (m - res) % m;
  return res;
}

std::uint64_t OrderCalculator::order_prime_power(std::uint64_t p, unsigned k) {
  std::uint64_t pk = pow_u64(p, k);
  if (auto it = memo_.find(pk); it != memo_.end()) return it->second;

  std::uint64_t ord = 1;
  if (pk > 2) {
    std::uint64_t res = residue(pk);
    // carmichael(p^k), factored
    std::vector<PrimePower> lambda_factors;
    std::uint64_t lambda;
    if (p == 2) {
      unsigned e = (k == 2) ? 1 : k - 2;
      lambda = std::uint64_t(1) << e;
      lambda_factors.push_back({2, e});
    } else {
      FactoredInteger pm1 = factorize(p - 1);
      lambda_factors = pm1.factors;
      lambda = p - 1;
      if (k > 1) {
        lambda_factors.push_back({p, k - 1});
        lambda *= pow_u64(p, k - 1);
      }
    }
    // divide-out: shrink the group exponent along its prime factorization
    std::uint64_t t = lambda;
    for (const auto& f : lambda_factors) {
      for (std::uint64_t i = 0; i < f.exponent; ++i) {
        if (t % f.prime != 0) break;
        if (powmod_u64(res, t / f.prime, pk) == 1)
          t /= f.prime;
        else
          break;
      }
    }
    ord = t;
  }
  memo_.emplace(pk, ord);
  return ord;
}

std::uint64_t OrderCalculator::order(std::uint64_t u) {
  if (!in_S(*g_, u)) fail(Errc::not_in_s, "order: u shares a prime with the base");
  if (u <= 2) return 1;
  FactoredInteger f = factorize(u);
  std::uint64_t ord = 1;
  for (const auto& pp : f.factors) {
    std::uint64_t o = order_prime_power(pp.prime, static_cast<unsigned>(pp.exponent));
    ord = ord / gcd_u64(ord, o) * o;
  }
  return ord;
}

unsigned OrderCalculator::order_valuation(std::uint64_t u, std::uint64_t q, unsigned cap) {
  if (!is_prime_u64(q)) fail(Errc::invalid_argument, "order_valuation: q must be prime");
  if (cap < 1) fail(Errc::invalid_argument, "order_valuation: cap must be >= 1");
  std::uint64_t v = valuation_unchecked(q, order(u));
  return static_cast<unsigned>(std::min<std::uint64_t>(v, cap));
}

std::uint64_t multiplicative_order(const Base& g, std::uint64_t u) {
  OrderCalculator calc(g);
  return calc.order(u);
}

unsigned order_valuation(const Base& g, std::uint64_t u, std::uint64_t p, unsigned cap) {
  OrderCalculator calc(g);
  return calc.order_valuation(u, p, cap);
}

}  // namespace ordena
