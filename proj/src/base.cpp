#include "ordena/base.hpp"

#include <charconv>
#include <numeric>

#include "ordena/errors.hpp"
#include "ordena/modmath.hpp"

namespace ordena {

namespace {

constexpr std::uint64_t kMaxValueBits = 1ull << 25;

struct Cursor {
  const char* p;
  const char* end;
  void skip_space() {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
  }
  bool eat(char c) {
    skip_space();
    if (p < end && *p == c) {
      ++p;
      return true;
    }
    return false;
  }
  std::uint64_t integer(const char* what) {
    skip_space();
    const char* start = p;
    while (p < end && *p >= '0' && *p <= '9') ++p;
    std::uint64_t v = 0;
    auto res = std::from_chars(start, p, v);
    if (start == p || res.ec != std::errc{})
      fail(Errc::parse, std::string("parse_base: malformed or oversized ") + what);
    return v;
  }
};

std::uint64_t bit_length(std::uint64_t n) {
  std::uint64_t b = 0;
  while (n) {
    ++b;
    n >>= 1;
  }
  return b;
}

FactoredInteger power_of(const FactoredInteger& mantissa, std::uint64_t e) {
  std::uint64_t bits = 0;
  std::vector<PrimePower> fs;
  for (const auto& f : mantissa.factors) {
    std::uint64_t exp = f.exponent * e;
    if (e != 0 && exp / e != f.exponent) fail(Errc::unsupported, "parse_base: exponent overflow");
    bits += exp * bit_length(f.prime);
    fs.push_back({f.prime, exp});
  }
  if (bits > kMaxValueBits)
    fail(Errc::unsupported, "parse_base: operand too large to materialize");
  return from_prime_powers(std::move(fs));
}

}  // namespace

std::uint64_t Base::nu2_h() const { return valuation_unchecked(2, h); }

Base parse_base(const std::string& text) {
  Cursor c{text.data(), text.data() + text.size()};
  Base b;
  c.skip_space();
  if (c.eat('-')) b.sign = -1;
  std::uint64_t mnum = c.integer("numerator");
  std::uint64_t mden = 1;
  if (c.eat('/')) mden = c.integer("denominator");
  std::uint64_t e = 1;
  if (c.eat('^')) e = c.integer("exponent");
  c.skip_space();
  if (c.p != c.end) fail(Errc::parse, "parse_base: trailing characters");

  if (mden == 0) fail(Errc::parse, "parse_base: zero denominator");
  if (mnum == 0) fail(Errc::invalid_argument, "parse_base: base 0 is excluded");
  std::uint64_t g = gcd_u64(mnum, mden);
  mnum /= g;
  mden /= g;
  if (mnum == 1 && mden == 1)
    fail(Errc::invalid_argument, "parse_base: bases 1 and -1 are excluded");
  if (e == 0) fail(Errc::invalid_argument, "parse_base: exponent 0 denotes 1, which is excluded");

  FactoredInteger fnum = factorize(mnum);
  FactoredInteger fden = factorize(mden);

  // h = written exponent times the gcd of the mantissa's prime exponents;
  // the power itself is never expanded while extracting it.
  std::uint64_t g0exp = 0;
  for (const auto& f : fnum.factors) g0exp = std::gcd(g0exp, f.exponent);
  for (const auto& f : fden.factors) g0exp = std::gcd(g0exp, f.exponent);
  std::uint64_t h = g0exp * e;
  if (g0exp != 0 && h / g0exp != e) fail(Errc::unsupported, "parse_base: exponent overflow");
  b.h = h;

  std::vector<PrimePower> g0n, g0d;
  for (const auto& f : fnum.factors) g0n.push_back({f.prime, f.exponent / g0exp});
  for (const auto& f : fden.factors) g0d.push_back({f.prime, f.exponent / g0exp});
  b.g0_num = from_prime_powers(std::move(g0n));
  b.g0_den = from_prime_powers(std::move(g0d));

  b.num = power_of(fnum, e);
  b.den = power_of(fden, e);

  b.disc = discriminant(b.g0_num, b.g0_den);
  auto [t1, t2] = tau(b);
  b.tau1 = t1;
  b.tau2 = t2;

  for (const auto& f : b.num.factors) b.support.push_back(f.prime);
  for (const auto& f : b.den.factors) b.support.push_back(f.prime);
  std::sort(b.support.begin(), b.support.end());

  b.text = text;
  return b;
}

BigInt discriminant(const FactoredInteger& g0_num, const FactoredInteger& g0_den) {
  // Q(sqrt(a/b)) = Q(sqrt(k)) with k the squarefree part of a*b
  BigInt k = 1;
  for (const auto& f : g0_num.factors)
    if (f.exponent % 2 == 1) k *= f.prime;
  for (const auto& f : g0_den.factors)
    if (f.exponent % 2 == 1) k *= f.prime;
  if (k == 1)
    fail(Errc::domain, "discriminant: g0 is a rational square, the field degenerates to Q");
  return (k % 4 == 1) ? k : 4 * k;
}

std::pair<int, int> tau(const Base& g) {
  int t1 = (g.disc == 8) ? 1 : 0;
  int t2 = t1 + (1 - g.sign) / 2;
  return {t1, t2};
}

bool in_S(const Base& g, std::uint64_t u) {
  if (u == 0) fail(Errc::invalid_argument, "in_S: u must be positive");
  for (std::uint64_t p : g.support)
    if (u % p == 0) return false;
  return true;
}

bool in_S(const Base& g, const BigInt& u) {
  if (u <= 0) fail(Errc::invalid_argument, "in_S: u must be positive");
  for (std::uint64_t p : g.support)
    if (u % p == 0) return false;
  return true;
}

}  // namespace ordena
