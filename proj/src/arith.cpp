#include "ordena/arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ordena/errors.hpp"
#include "ordena/modmath.hpp"

namespace ordena {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
  if (a % n == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's cycle variant of Pollard rho; deterministic parameter schedule.
std::uint64_t pollard_brent(std::uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = mulmod_u64(y, y, n);
      y = (y + c) % n;
      ++lam;
      std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = gcd_u64(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

SpfTable::SpfTable(std::uint32_t lim) : limit(lim), spf(std::size_t(lim) + 1, 0) {
  for (std::uint32_t i = 2; i <= lim; ++i) {
    if (spf[i] == 0)
      for (std::uint64_t j = i; j <= lim; j += i)
        if (spf[j] == 0) spf[j] = i;
  }
}

FactoredInteger SpfTable::factorize(std::uint32_t n) const {
  if (n == 0) fail(Errc::invalid_argument, "factorize: argument must be positive");
  if (n > limit) fail(Errc::invalid_argument, "SpfTable: argument above table limit");
  FactoredInteger out;
  out.value = n;
  while (n > 1) {
    std::uint32_t p = spf[n];
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  return out;
}

namespace {

constexpr std::uint32_t kSpfLimit = 1u << 20;

const SpfTable& small_spf() {
  static const SpfTable table(kSpfLimit);
  return table;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin base set for the full 64-bit range
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) fail(Errc::invalid_argument, "factorize: argument must be positive");
  if (n <= kSpfLimit) return small_spf().factorize(static_cast<std::uint32_t>(n));
  FactoredInteger out;
  out.value = n;
  std::uint64_t rest = n;
  for (std::uint32_t p : trial_primes()) {
    if (static_cast<std::uint64_t>(p) * p > rest) break;
    if (rest % p == 0) {
      std::uint64_t e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      out.factors.push_back({p, e});
      if (rest == 1) break;
      if (is_prime_u64(rest)) {
        out.factors.push_back({rest, 1});
        rest = 1;
        break;
      }
    }
  }
  if (rest > 1) {
    std::vector<std::uint64_t> primes;
    factor_rec(rest, primes);
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
      std::size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      out.factors.push_back({primes[i], j - i});
      i = j;
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

FactoredInteger factorize(const BigInt& n) {
  if (n <= 0) fail(Errc::invalid_argument, "factorize: argument must be positive");
  if (n > BigInt(std::numeric_limits<std::uint64_t>::max()))
    fail(Errc::unsupported, "factorize: operand exceeds the 64-bit factorization range");
  return factorize(n.convert_to<std::uint64_t>());
}

FactoredInteger from_prime_powers(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  FactoredInteger out;
  out.value = 1;
  for (const auto& f : factors) {
    if (f.exponent == 0) continue;
    if (!out.factors.empty() && out.factors.back().prime == f.prime)
      fail(Errc::invalid_argument, "from_prime_powers: duplicate prime");
    out.factors.push_back(f);
    out.value *=
        boost::multiprecision::pow(BigInt(f.prime), static_cast<unsigned long>(f.exponent));
  }
  return out;
}

int mobius(const FactoredInteger& n) {
  for (const auto& f : n.factors)
    if (f.exponent >= 2) return 0;
  return (n.factors.size() % 2 == 0) ? 1 : -1;
}

FactoredInteger kappa(const FactoredInteger& n) {
  FactoredInteger out;
  out.value = 1;
  for (const auto& f : n.factors) {
    out.factors.push_back({f.prime, 1});
    out.value *= f.prime;
  }
  return out;
}

std::uint64_t valuation(std::uint64_t p, const BigInt& n) {
  if (!is_prime_u64(p)) fail(Errc::invalid_argument, "valuation: p must be prime");
  if (n <= 0) fail(Errc::invalid_argument, "valuation: n must be positive");
  std::uint64_t k = 0;
  BigInt m = n;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return k;
}

std::uint64_t valuation_unchecked(std::uint64_t p, std::uint64_t n) {
  std::uint64_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::vector<FactoredInteger> unitary_divisors(const FactoredInteger& m) {
  const std::size_t r = m.factors.size();
  if (r > 30) fail(Errc::unsupported, "unitary_divisors: too many distinct primes");
  std::vector<FactoredInteger> out;
  out.reserve(std::size_t(1) << r);
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::vector<PrimePower> fs;
    for (std::size_t j = 0; j < r; ++j)
      if (mask & (1u << j)) fs.push_back(m.factors[j]);
    out.push_back(from_prime_powers(std::move(fs)));
  }
  std::sort(out.begin(), out.end(),
            [](const FactoredInteger& a, const FactoredInteger& b) { return a.value < b.value; });
  return out;
}

BigInt gcd_supernatural(const BigInt& h, const FactoredInteger& d) {
  if (h <= 0) fail(Errc::invalid_argument, "gcd_supernatural: h must be positive");
  BigInt out = 1;
  for (const auto& f : d.factors) {
    BigInt m = h;
    while (m % f.prime == 0) {
      m /= f.prime;
      out *= f.prime;
    }
  }
  return out;
}

BigInt carmichael(const FactoredInteger& u) {
  BigInt lambda = 1;
  for (const auto& f : u.factors) {
    BigInt contrib;
    if (f.prime == 2) {
      if (f.exponent == 1)
        contrib = 1;
      else if (f.exponent == 2)
        contrib = 2;
      else
        contrib = BigInt(1) << (f.exponent - 2);
    } else {
      contrib = boost::multiprecision::pow(BigInt(f.prime),
                                           static_cast<unsigned long>(f.exponent - 1)) *
                (f.prime - 1);
    }
    lambda = boost::multiprecision::lcm(lambda, contrib);
  }
  return lambda;
}

std::uint64_t carmichael_u64(std::uint64_t u) {
  return carmichael(factorize(u)).convert_to<std::uint64_t>();
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) composite[j] = 1;
    }
  }
  return primes;
}

}  // namespace ordena
