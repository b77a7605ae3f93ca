#include "ordena/mdensity.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <thread>

#include "ordena/errors.hpp"

namespace ordena {

namespace {

std::uint64_t pow_u64(std::uint64_t p, unsigned k) {
  std::uint64_t v = 1;
  while (k--) v *= p;
  return v;
}

// P(nu_p(m) = k) = (p-1)/p^{k+1}
Rational exact_valuation_density(std::uint64_t p, unsigned k) {
  return Rational(BigInt(p) - 1, boost::multiprecision::pow(BigInt(p), k + 1));
}

}  // namespace

std::vector<ValuationPattern> coincidence_patterns(const Base& g, std::uint64_t pmax,
                                                   unsigned emax) {
  std::vector<ValuationPattern> out;
  for (const auto& q : coincidence_search(g, pmax, emax)) {
    ValuationPattern pat;
    pat.constraints = {{q.p1, q.e1}, {q.p2, q.e2}};
    pat.source = q;
    out.push_back(std::move(pat));
  }
  return out;
}

Rational unique_pattern_density_from(const std::vector<ValuationPattern>& patterns) {
  if (patterns.empty()) return Rational(1);

  std::map<std::uint64_t, unsigned> caps;  // prime -> cap (tail state at nu >= cap)
  for (const auto& pat : patterns)
    for (const auto& [p, a] : pat.constraints) caps[p] = std::max(caps[p], a + 1);

  std::vector<std::uint64_t> primes;
  std::vector<unsigned> cap;
  for (const auto& [p, c] : caps) {
    primes.push_back(p);
    cap.push_back(c);
  }
  const std::size_t n = primes.size();

  // state probabilities per prime: exact valuations 0..cap-1 plus the tail
  std::vector<std::vector<Rational>> prob(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned k = 0; k < cap[i]; ++k) prob[i].push_back(exact_valuation_density(primes[i], k));
    prob[i].push_back(Rational(1, boost::multiprecision::pow(BigInt(primes[i]), cap[i])));
  }

  std::vector<unsigned> state(n, 0);
  Rational bad(0);
  for (;;) {
    bool is_bad = false;
    for (const auto& pat : patterns) {
      bool active = true;
      for (const auto& [p, a] : pat.constraints) {
        std::size_t i = std::lower_bound(primes.begin(), primes.end(), p) - primes.begin();
        if (state[i] != a) {
          active = false;
          break;
        }
      }
      if (active) {
        is_bad = true;
        break;
      }
    }
    if (is_bad) {
      Rational w(1);
      for (std::size_t i = 0; i < n; ++i) w *= prob[i][state[i]];
      bad += w;
    }
    // next mixed-radix state
    std::size_t i = 0;
    while (i < n && ++state[i] > cap[i]) state[i++] = 0;
    if (i == n) break;
  }
  return Rational(1) - bad;
}

Rational unique_pattern_density(const Base& g) {
  return unique_pattern_density_from(coincidence_patterns(g));
}

Rational bad_density_inclusion_exclusion(const std::vector<ValuationPattern>& patterns) {
  const std::size_t n = patterns.size();
  if (n > 20) fail(Errc::unsupported, "bad_density_inclusion_exclusion: too many patterns");
  Rational bad(0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::map<std::uint64_t, unsigned> merged;
    bool consistent = true;
    for (std::size_t j = 0; j < n && consistent; ++j) {
      if (!(mask & (1u << j))) continue;
      for (const auto& [p, a] : patterns[j].constraints) {
        auto [it, inserted] = merged.emplace(p, a);
        if (!inserted && it->second != a) {
          consistent = false;
          break;
        }
      }
    }
    if (!consistent) continue;
    Rational w(1);
    for (const auto& [p, a] : merged) w *= exact_valuation_density(p, a);
    bad += (std::popcount(mask) % 2 == 1) ? w : -w;
  }
  return bad;
}

std::uint64_t scan_bad(const Base& g, std::uint64_t limit, int threads) {
  if (limit > 1'000'000'000ull) fail(Errc::invalid_argument, "scan_bad: limit must be <= 10^9");
  auto patterns = coincidence_patterns(g);
  if (patterns.empty() || limit == 0) return 0;

  struct Test {
    std::uint64_t pa, pa1;  // nu_p(m) = a  <=>  pa | m and pa1 does not divide m
  };
  std::vector<std::vector<Test>> tests;
  for (const auto& pat : patterns) {
    std::vector<Test> t;
    for (const auto& [p, a] : pat.constraints) t.push_back({pow_u64(p, a), pow_u64(p, a + 1)});
    tests.push_back(std::move(t));
  }

  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    for (std::uint64_t m = lo; m < hi; ++m) {
      for (const auto& pat : tests) {
        bool active = true;
        for (const auto& t : pat) {
          if (m % t.pa != 0 || m % t.pa1 == 0) {
            active = false;
            break;
          }
        }
        if (active) {
          ++count;
          break;
        }
      }
    }
    return count;
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1) return count_range(1, limit + 1);

  std::vector<std::uint64_t> partial(nthreads, 0);
  std::vector<std::thread> workers;
  std::uint64_t chunk = limit / nthreads + 1;
  for (int t = 0; t < nthreads; ++t) {
    std::uint64_t lo = 1 + chunk * t;
    std::uint64_t hi = std::min(limit + 1, lo + chunk);
    if (lo > limit) break;
    workers.emplace_back([&, t, lo, hi] { partial[t] = count_range(lo, hi); });
  }
  for (auto& w : workers) w.join();
  std::uint64_t total = 0;
  for (std::uint64_t c : partial) total += c;
  return total;
}

}  // namespace ordena
