#include "ordena/coincidence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ordena/errors.hpp"
#include "ordena/modmath.hpp"

namespace ordena {

namespace {

// C(p,a) = p^{2-a}/(p^2-1), kept rational so a = 1 works uniformly.
Rational c_value(std::uint64_t p, unsigned a) {
  BigInt pp(p);
  Rational v(pp * pp, pp * pp - 1);
  for (unsigned i = 0; i < a; ++i) v /= pp;
  return v;
}

bool equation_holds(std::uint64_t p, unsigned a, std::uint64_t q, unsigned b) {
  return c_value(p, a) == c_value(q, b);
}

void sort_solutions(std::vector<OrderEquationSolution>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

}  // namespace

std::vector<OrderEquationSolution> prop1_structured() {
  std::vector<OrderEquationSolution> out;

  // beta >= 3: q divides p^2-1 = (p-1)(p+1) with q > p, so q = p+1 and
  // (p,q) = (2,3). Matching 2- and 3-valuations in 2^{a}*3 = 3^{c}*8 gives
  // a = 3, c = 1, i.e. (2,5,3,3).
  out.push_back({2, 5, 3, 3});

  // beta = 2, p = 2: q^2 - 1 = 3*2^b. One of q-1, q+1 is not divisible by 4,
  // hence divides 6; enumerate those candidates.
  for (std::uint64_t t : {1, 2, 3, 6}) {
    for (std::uint64_t q : {t + 1, t - 1}) {
      if (q <= 2 || !is_prime_u64(q)) continue;
      std::uint64_t v = q * q - 1;
      if (v % 3 != 0) continue;
      std::uint64_t pow2 = v / 3;
      if ((pow2 & (pow2 - 1)) != 0) continue;  // must be a power of two
      unsigned b = 0;
      while (pow2 > 1) {
        pow2 >>= 1;
        ++b;
      }
      out.push_back({2, b + 2, q, 2});
    }
  }

  // beta = 2, p odd, p^b | q+1: forces b = 1, r = (p+1)/2 and p^2-2p-3 = 0,
  // so p = 3, q = p(p+1)/2 - 1 = 5.
  out.push_back({3, 3, 5, 2});

  // beta = 2, p odd, p^b | q-1: forces b = 1, r = (p-1)/2 and p^2-6p+5 = 0,
  // so p = 5, q = p(p-1)/2 + 1 = 11.
  out.push_back({5, 3, 11, 2});

  sort_solutions(out);
  for (const auto& s : out)
    if (!equation_holds(s.p, s.alpha, s.q, s.beta))
      throw std::logic_error("prop1_structured: candidate fails the equation");
  return out;
}

std::vector<OrderEquationSolution> prop1_brute_force(std::uint64_t pmax, unsigned emax) {
  if (pmax > 2'000'000) fail(Errc::invalid_argument, "prop1_brute_force: pmax too large");
  std::map<Rational, std::vector<std::pair<std::uint64_t, unsigned>>> groups;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(pmax))) {
    BigInt pp(p);
    Rational value(pp, pp * pp - 1);  // C(p,1)
    for (unsigned a = 1; a <= emax; ++a) {
      groups[value].push_back({p, a});
      value /= pp;
    }
  }
  std::vector<OrderEquationSolution> out;
  for (const auto& [value, entries] : groups) {
    if (entries.size() < 2) continue;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        out.push_back({entries[i].first, entries[i].second, entries[j].first, entries[j].second});
  }
  sort_solutions(out);
  return out;
}

std::vector<OrderEquationSolution> solve_order_equation(std::uint64_t pmax, unsigned emax) {
  if (pmax < 11 || emax < 6)
    fail(Errc::invalid_argument, "solve_order_equation: bounds must be at least (11, 6)");
  std::vector<OrderEquationSolution> structured = prop1_structured();
  std::vector<OrderEquationSolution> bounded;
  for (const auto& s : structured)
    if (s.q <= pmax && s.alpha <= emax && s.beta <= emax) bounded.push_back(s);
  std::vector<OrderEquationSolution> brute = prop1_brute_force(pmax, emax);
  if (bounded != brute)
    throw std::logic_error("solve_order_equation: structured and brute-force routes disagree");
  return bounded;
}

std::vector<CoincidenceQuadruple> coincidence_search(const Base& g, std::uint64_t pmax,
                                                     unsigned emax) {
  if (pmax < 11 || emax < 6)
    fail(Errc::invalid_argument, "coincidence_search: bounds must be at least (11, 6)");
  if (pmax > 1'000'000) fail(Errc::invalid_argument, "coincidence_search: pmax too large");
  std::map<Rational, std::vector<std::pair<std::uint64_t, unsigned>>> groups;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(pmax))) {
    for (unsigned e = 1; e <= emax; ++e) {
      Rational value = delta(g, from_prime_powers({{p, e}}));
      groups[value].push_back({p, e});
    }
  }
  std::vector<CoincidenceQuadruple> out;
  for (const auto& [value, entries] : groups) {
    if (entries.size() < 2) continue;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        if (entries[i].first == entries[j].first)
          throw std::logic_error("coincidence_search: delta not injective in the exponent");
        out.push_back({entries[i].first, entries[i].second, entries[j].first, entries[j].second,
                       value});
      }
  }
  std::sort(out.begin(), out.end(), [](const CoincidenceQuadruple& a, const CoincidenceQuadruple& b) {
    return std::tie(a.p1, a.e1, a.p2, a.e2) < std::tie(b.p1, b.e1, b.p2, b.e2);
  });
  return out;
}

std::vector<CoincidenceQuadruple> coincidence_families(const Base& g) {
  const std::uint64_t h = g.h;
  const std::int64_t t1 = g.tau1, t2 = g.tau2;
  const std::int64_t v2 = static_cast<std::int64_t>(valuation_unchecked(2, h));
  const std::int64_t v3 = static_cast<std::int64_t>(valuation_unchecked(3, h));
  const std::int64_t v5 = static_cast<std::int64_t>(valuation_unchecked(5, h));
  const std::int64_t v7 = static_cast<std::int64_t>(valuation_unchecked(7, h));
  const std::int64_t v11 = static_cast<std::int64_t>(valuation_unchecked(11, h));

  struct Family {
    std::uint64_t p1;
    std::int64_t e1;
    std::uint64_t p2;
    std::int64_t e2;
    std::int64_t guard1_v, guard1_bound;  // holds iff nu_{p1-ish}(h) < bound
    std::int64_t guard2_v, guard2_bound;
  };
  const Family families[5] = {
      {2, 5 - t1 - v2, 3, 3 - v3, v2, 5 - t2, v3, 3},
      {2, 5 - t1 - v2, 5, 2 - v5, v2, 5 - t2, v5, 2},
      {2, 6 - t1 - v2, 7, 2 - v7, v2, 6 - t2, v7, 2},
      {3, 3 - v3, 5, 2 - v5, v3, 3, v5, 2},
      {5, 3 - v5, 11, 2 - v11, v5, 3, v11, 2},
  };

  std::vector<CoincidenceQuadruple> out;
  for (const auto& f : families) {
    bool guards = f.guard1_v < f.guard1_bound && f.guard2_v < f.guard2_bound;
    if (!guards) continue;
    if (f.e1 < 1 || f.e2 < 1)
      throw std::logic_error("coincidence_families: guard admitted a non-positive exponent");
    Rational v1 = delta(g, from_prime_powers({{f.p1, static_cast<std::uint64_t>(f.e1)}}));
    Rational v2q = delta(g, from_prime_powers({{f.p2, static_cast<std::uint64_t>(f.e2)}}));
    if (v1 != v2q) throw std::logic_error("coincidence_families: family densities disagree");
    out.push_back({f.p1, static_cast<unsigned>(f.e1), f.p2, static_cast<unsigned>(f.e2), v1});
  }
  std::sort(out.begin(), out.end(), [](const CoincidenceQuadruple& a, const CoincidenceQuadruple& b) {
    return std::tie(a.p1, a.e1, a.p2, a.e2) < std::tie(b.p1, b.e1, b.p2, b.e2);
  });
  return out;
}

GeneratorSet derive_generator_sets(int tau2) {
  if (tau2 < 0 || tau2 > 2)
    fail(Errc::invalid_argument, "derive_generator_sets: tau2 must be 0, 1 or 2");
  const std::uint64_t two5 = std::uint64_t(1) << (5 - tau2);
  const std::uint64_t two6 = std::uint64_t(1) << (6 - tau2);
  const std::uint64_t pairs[5][2] = {
      {two5, 27}, {two5, 25}, {two6, 49}, {27, 25}, {125, 121}};

  std::vector<std::uint64_t> lcms;
  for (std::uint32_t mask = 0; mask < 32; ++mask) {
    std::uint64_t l = 1;
    for (int j = 0; j < 5; ++j) l = lcm_u64(l, pairs[j][(mask >> j) & 1]);
    lcms.push_back(l);
  }
  std::sort(lcms.begin(), lcms.end());
  lcms.erase(std::unique(lcms.begin(), lcms.end()), lcms.end());

  // drop every element that is a proper multiple of another
  std::vector<std::uint64_t> minimal;
  for (std::uint64_t x : lcms) {
    bool dominated = false;
    for (std::uint64_t y : lcms) {
      if (y != x && x % y == 0) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(x);
  }
  return {tau2, std::move(minimal)};
}

MullerResult is_muller(const Base& g) {
  GeneratorSet set = derive_generator_sets(g.tau2);
  for (std::uint64_t member : set.members)
    if (g.h % member == 0) return {true, member};
  return {false, std::nullopt};
}

}  // namespace ordena
