// Acceptance suite: one line per criterion, exit code = number of failures.
// Everything here is either an exact identity, an exact rational value, an
// oracle equivalence, or a prime-density bound with a stated tolerance.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ordena/arith.hpp"
#include "ordena/base.hpp"
#include "ordena/coincidence.hpp"
#include "ordena/density.hpp"
#include "ordena/mdensity.hpp"
#include "ordena/order.hpp"
#include "ordena/sieve.hpp"
#include "support.hpp"

using namespace ordena;
using testsupport::F;
using testsupport::R;
using testsupport::splitmix64;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%2d] %s %s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL", name.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 4 : static_cast<int>(std::min(hw, 8u));
}

const std::vector<std::pair<std::string, std::uint64_t>>& lemma2_grid() {
  static const std::vector<std::pair<std::string, std::uint64_t>> grid = {
      {"2", 12}, {"2", 800}, {"2", 105}, {"3", 24}, {"-2", 36}, {"10", 12}};
  return grid;
}

}  // namespace

int main() {
  const Base g2 = parse_base("2");
  const Base g3 = parse_base("3");

  criterion(1, "exact density table", [&](std::string& detail) {
    if (delta(g2, F(2)) != R("17/24")) return false;
    if (delta(g2, F(4)) != R("5/12")) return false;
    for (unsigned n = 3; n <= 20; ++n) {
      Rational expect(1, BigInt(3) * (BigInt(1) << (n - 1)));  // 2^{1-n}/3
      if (delta(g2, F(std::uint64_t(1) << n)) != expect) return false;
    }
    int checked = 2 + 18;
    for (std::uint64_t q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                            71, 73, 79, 83, 89, 97}) {
      for (std::uint64_t n = 1; n <= 6; ++n) {
        if (delta(g2, from_prime_powers({{q, n}})) != cap_C(q, n)) return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " exact values";
    return true;
  });

  criterion(2, "order-equation solutions at (10^4, 64)", [&](std::string& detail) {
    const std::vector<OrderEquationSolution> expected = {
        {2, 5, 3, 3}, {2, 5, 5, 2}, {2, 6, 7, 2}, {3, 3, 5, 2}, {5, 3, 11, 2}};
    auto structured = prop1_structured();
    auto brute = prop1_brute_force(10000, 64);
    auto solved = solve_order_equation(10000, 64);
    detail = "structured == brute-force == published list";
    return structured == expected && brute == expected && solved == expected;
  });

  criterion(3, "g = 2 coincidences at (1000, 40)", [&](std::string& detail) {
    auto found = coincidence_search(g2, 1000, 40);
    if (found.size() != 5) return false;
    const std::vector<std::array<std::uint64_t, 4>> quads = {
        {2, 4, 3, 3}, {2, 4, 5, 2}, {2, 5, 7, 2}, {3, 3, 5, 2}, {5, 3, 11, 2}};
    const std::vector<Rational> values = {R("1/24"), R("1/24"), R("1/48"), R("1/24"), R("1/120")};
    for (std::size_t i = 0; i < 5; ++i) {
      if (std::array<std::uint64_t, 4>{found[i].p1, found[i].e1, found[i].p2, found[i].e2} !=
          quads[i])
        return false;
      if (found[i].value != values[i]) return false;
    }
    detail = "five quadruples, values 1/24 (x3), 1/48, 1/120";
    return true;
  });

  criterion(4, "Muller classification", [&](std::string& detail) {
    if (!is_muller(parse_base("3^8000")).muller) return false;
    if (!is_muller(parse_base("2^4000")).muller) return false;
    if (!is_muller(parse_base("-2^2000")).muller) return false;
    if (is_muller(parse_base("3^4000")).muller) return false;
    if (is_muller(g2).muller) return false;
    auto fams = coincidence_families(parse_base("3^4000"));
    if (fams.size() != 1) return false;
    if (!(fams[0].p1 == 2 && fams[0].e1 == 1 && fams[0].p2 == 7 && fams[0].e2 == 2)) return false;
    detail = "witness family for 3^4000 is (2,1,7,2)";
    return true;
  });

  criterion(5, "generator sets", [&](std::string& detail) {
    auto s1 = derive_generator_sets(0);
    const std::vector<std::uint64_t> expected = {8000,    165375,  193600,  196000,
                                                 209088,  4002075, 4743200, 5122656};
    if (s1.members != expected) return false;
    auto s2 = derive_generator_sets(1);
    auto s4 = derive_generator_sets(2);
    std::vector<std::uint64_t> halved, quartered;
    for (std::uint64_t m : expected) halved.push_back(m % 2 == 0 ? m / 2 : m);
    for (std::uint64_t m : expected) quartered.push_back(m % 2 == 0 ? m / 4 : m);
    std::sort(halved.begin(), halved.end());
    std::sort(quartered.begin(), quartered.end());
    detail = "tau2 = 1, 2 sets are the evens of S_1 divided by 2, 4";
    return s2.members == halved && s4.members == quartered;
  });

  criterion(6, "exercise density and scan", [&](std::string& detail) {
    if (unique_pattern_density(g2) != R("147497571941/147916692000")) return false;
    std::uint64_t count = scan_bad(g2, 10'000'000, worker_count());
    double expect = (Rational(1) - R("147497571941/147916692000")).convert_to<double>() * 1e7;
    detail = "scan_bad(2,10^7) = " + std::to_string(count) + ", predicted " +
             std::to_string(expect);
    return std::abs(static_cast<double>(count) - expect) <= 0.01 * expect;
  });

  criterion(7, "Lemma 2 identity at 10 checkpoints up to 10^6", [&](std::string& detail) {
    SieveOptions opts;
    opts.threads = worker_count();
    int rows = 0;
    for (const auto& [text, m] : lemma2_grid()) {
      auto report = verify_lemma2(parse_base(text), F(m), 1'000'000, 10, opts);
      if (!report.passed) {
        detail = "mismatch at g = " + text + ", m = " + std::to_string(m);
        return false;
      }
      rows += static_cast<int>(report.rows.size());
    }
    detail = std::to_string(rows) + " checkpoint identities, zero tolerance";
    return true;
  });

  criterion(8, "oracle equivalence for all counting modes at x = 10^4",
            [&](std::string& detail) {
    const std::uint64_t x = 10'000;
    int compared = 0;
    for (const auto& [text, m] : lemma2_grid()) {
      Base g = parse_base(text);
      for (CountMode mode : {CountMode::N, CountMode::NPrime, CountMode::NDoublePrime,
                             CountMode::P, CountMode::PPrime}) {
        auto sieved = sieve_membership(g, F(m), x, mode);
        auto naive = testsupport::naive_membership(g, F(m), x, mode);
        for (std::uint64_t u = 1; u <= x; ++u) {
          if (sieved[u] != naive[u]) {
            detail = "first mismatch: g = " + text + ", m = " + std::to_string(m) +
                     ", mode = " + count_mode_name(mode) + ", u = " + std::to_string(u);
            return false;
          }
        }
        ++compared;
      }
    }
    detail = std::to_string(compared) + " (g, m, mode) membership functions equal element-wise";
    return true;
  });

  criterion(9, "prime-density convergence at x = 10^7", [&](std::string& detail) {
    SieveOptions opts;
    opts.threads = worker_count();
    const std::uint64_t x = 10'000'000;
    const double pi_x = static_cast<double>(count_primes(x));
    const std::vector<std::pair<std::string, std::uint64_t>> grid = {
        {"2", 2}, {"2", 3}, {"2", 4}, {"2", 8}, {"2", 12}, {"3", 6}};
    double worst = 0;
    for (const auto& [text, d] : grid) {
      Base g = parse_base(text);
      auto table = count_series(g, F(d), x, CountMode::P, 1, opts);
      double ratio = static_cast<double>(table.checkpoints.back().second) / pi_x;
      double predicted = delta(g, F(d)).convert_to<double>();
      double err = std::abs(ratio - predicted);
      worst = std::max(worst, err);
      if (err > 0.02) {
        detail = "g = " + text + ", d = " + std::to_string(d) +
                 ": |ratio - delta| = " + std::to_string(err);
        return false;
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst |P/pi - delta| = %.5f <= 0.02", worst);
    detail = buf;
    return true;
  });

  criterion(10, "property suites (Prop 3, witness family, epsilon identity)",
            [&](std::string& detail) {
    std::uint64_t state = 4242;
    for (int i = 0; i < 1000; ++i) {
      Base g = testsupport::random_base(state);
      std::uint64_t d = 1 + splitmix64(state) % 5000;
      std::uint64_t d1 = 2 + splitmix64(state) % 40;
      Rational v = delta(g, F(d)), w = delta(g, F(d * d1));
      if (!(w < v)) {
        detail = "Prop 3.1 strict monotonicity failed";
        return false;
      }
      if (g.sign > 0 && !(w <= R("5/6") * v)) {
        detail = "Prop 3.1 5/6 bound failed";
        return false;
      }
    }
    // part 4: product form over distinct odd prime powers
    const std::uint64_t odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    for (int i = 0; i < 400; ++i) {
      Base g = testsupport::random_base(state);
      std::vector<PrimePower> pps;
      std::uint64_t used = 0;
      unsigned r = 1 + splitmix64(state) % 4;
      for (unsigned j = 0; j < r; ++j) {
        std::uint64_t p = odd_primes[splitmix64(state) % 8];
        if (used & (1ull << p)) continue;
        used |= 1ull << p;
        pps.push_back({p, 1 + splitmix64(state) % 3});
      }
      FactoredInteger m = from_prime_powers(pps);
      Rational product(1);
      for (const auto& pp : m.factors) product *= Rational(1) - delta(g, from_prime_powers({pp}));
      if (delta_prime(g, m) != product) {
        detail = "Prop 3.4 product form failed";
        return false;
      }
    }
    // part 5: min over unitary divisors
    for (int i = 0; i < 300; ++i) {
      Base g = testsupport::random_base(state);
      std::uint64_t m = 2 + splitmix64(state) % 100000;
      FactoredInteger fm = F(m);
      bool first = true;
      Rational best;
      for (const auto& j : unitary_divisors(fm)) {
        if (j.is_one()) continue;
        Rational v = Rational(1) - delta_prime(g, j);
        if (first || v < best) {
          best = v;
          first = false;
        }
      }
      if (best != gamma_min(g, fm)) {
        detail = "Prop 3.5 minimum failed";
        return false;
      }
    }
    // witness identity
    for (unsigned e = 1; e <= 20; ++e) {
      Base g = parse_base("-5^" + std::to_string(std::uint64_t(1) << e));
      if (delta(g, F(6)) / delta(g, F(3)) !=
          Rational(1) - Rational(1, BigInt(3) * (BigInt(1) << e))) {
        detail = "witness identity failed at e = " + std::to_string(e);
        return false;
      }
    }
    if (delta(g3, F(6)) / delta(g3, F(3)) != R("5/6")) return false;
    // epsilon closed form for positive g, all even d <= 10^4, 50 bases
    int bases = 0;
    while (bases < 50) {
      Base g = testsupport::random_base(state);
      if (g.sign < 0) continue;
      ++bases;
      for (std::uint64_t d = 2; d <= 10'000; d += 2) {
        Rational expect(1);
        for (int i = 0; i < (1 << table_gamma(g, F(d))); ++i) expect *= Rational(-1, 2);
        if (epsilon(g, F(d)) != expect) {
          detail = "epsilon identity failed";
          return false;
        }
      }
    }
    detail = "1000 monotonicity pairs, 400 products, 300 minima, e = 1..20, 50 bases";
    return true;
  });

  criterion(11, "Lemma 5 multiplicativity and congruence characterization",
            [&](std::string& detail) {
    auto mult = check_complete_multiplicativity(g2, F(12), 1'000'000, 10'000);
    if (!mult.passed) {
      detail = "multiplicativity counterexample found";
      return false;
    }
    for (std::uint64_t d : {2, 6, 15}) {
      auto report = congruence_characterization(g2, F(d), 10'000);
      if (!report.passed) {
        detail = "congruence mismatch at d = " + std::to_string(d);
        return false;
      }
    }
    detail = "10^4 random pairs; all primes <= 10^4 for d in {2, 6, 15}";
    return true;
  });

  criterion(12, "determinism across 1, 2 and 8 workers", [&](std::string& detail) {
    for (const auto& [text, m] : lemma2_grid()) {
      Base g = parse_base(text);
      SieveOptions one;
      one.threads = 1;
      auto reference = count_series(g, F(m), 1'000'000, CountMode::N, 10, one);
      for (int threads : {2, 8}) {
        SieveOptions opts;
        opts.threads = threads;
        opts.segment_size = 1 << 16;  // many segments, genuinely interleaved
        auto table = count_series(g, F(m), 1'000'000, CountMode::N, 10, opts);
        if (table.checkpoints != reference.checkpoints) {
          detail = "divergence at g = " + text + ", m = " + std::to_string(m) +
                   ", threads = " + std::to_string(threads);
          return false;
        }
      }
    }
    detail = "checkpoint counts bit-identical";
    return true;
  });

  std::printf("RESULT: %d/12 criteria passed\n", 12 - failures);
  return failures;
}
