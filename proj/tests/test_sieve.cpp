#include "doctest.h"

#include <cmath>

#include "ordena/errors.hpp"
#include "ordena/sieve.hpp"
#include "support.hpp"

using namespace ordena;
using testsupport::F;
using testsupport::R;

static const Base g2 = parse_base("2");
static const Base g3 = parse_base("3");

static std::uint64_t final_count(const CountTable& t) { return t.checkpoints.back().second; }

TEST_CASE("checkpoint grid") {
  auto grid = checkpoint_grid(1000000, 10);
  CHECK(grid.back() == 1000000);
  CHECK(grid.size() <= 10);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i - 1] < grid[i]);
  CHECK(checkpoint_grid(25, 1) == std::vector<std::uint64_t>{25});
}

TEST_CASE("hand-enumerated counts at x = 25") {
  CHECK(final_count(count_series(g2, F(3), 25, CountMode::N, 1)) == 8);
  CHECK(final_count(count_series(g2, F(4), 25, CountMode::N, 1)) == 8);
  CHECK(final_count(count_series(g2, F(12), 25, CountMode::NPrime, 1)) == 4);
  CHECK(final_count(count_series(g2, F(12), 25, CountMode::N, 1)) == 12);
  CHECK(final_count(count_series(g2, F(3), 25, CountMode::P, 1)) == 3);
  CHECK(final_count(count_series(g2, F(6), 25, CountMode::PPrime, 1)) == 1);
}

TEST_CASE("membership bitmaps for the x = 25 examples") {
  auto bitmap = sieve_membership(g2, F(3), 25, CountMode::N);
  std::vector<std::uint64_t> members;
  for (std::uint64_t u = 1; u <= 25; ++u)
    if (bitmap[u]) members.push_back(u);
  CHECK(members == std::vector<std::uint64_t>{1, 3, 5, 11, 15, 17, 23, 25});

  auto nprime = sieve_membership(g2, F(12), 25, CountMode::NPrime);
  members.clear();
  for (std::uint64_t u = 1; u <= 25; ++u)
    if (nprime[u]) members.push_back(u);
  CHECK(members == std::vector<std::uint64_t>{1, 3, 11, 23});

  auto primes3 = sieve_membership(g2, F(3), 25, CountMode::P);
  members.clear();
  for (std::uint64_t u = 1; u <= 25; ++u)
    if (primes3[u]) members.push_back(u);
  CHECK(members == std::vector<std::uint64_t>{7, 13, 19});
}

TEST_CASE("count table invariants") {
  auto table = count_series(g2, F(12), 20000, CountMode::N, 12);
  CHECK(table.predicted_exponent == R("3/8"));
  for (std::size_t i = 1; i < table.checkpoints.size(); ++i)
    CHECK(table.checkpoints[i - 1].second <= table.checkpoints[i].second);

  // m = 1: every order is divisible by 1
  auto trivial = count_series(g2, F(1), 500, CountMode::N, 5);
  for (const auto& [x, count] : trivial.checkpoints) CHECK(count == 0);

  auto nprime = count_series(g2, F(800), 20000, CountMode::NPrime, 6);
  CHECK(nprime.predicted_exponent == Rational(1) - delta_prime(g2, F(800)));
  auto p_mode = count_series(g2, F(8), 20000, CountMode::P, 6);
  CHECK(p_mode.predicted_exponent == delta(g2, F(8)));
}

TEST_CASE("sieve equals the naive order loop on every element") {
  const std::uint64_t x = 2000;
  for (const char* text : {"2", "3", "-2", "10"}) {
    Base g = parse_base(text);
    for (std::uint64_t m : {12ull, 800ull, 105ull, 24ull, 36ull}) {
      for (CountMode mode : {CountMode::N, CountMode::NPrime, CountMode::NDoublePrime,
                             CountMode::P, CountMode::PPrime}) {
        auto sieved = sieve_membership(g, F(m), x, mode);
        auto naive = testsupport::naive_membership(g, F(m), x, mode);
        REQUIRE(sieved.size() == naive.size());
        for (std::uint64_t u = 1; u <= x; ++u) {
          if (sieved[u] != naive[u]) {
            CAPTURE(text);
            CAPTURE(m);
            CAPTURE(static_cast<int>(mode));
            CAPTURE(u);
            REQUIRE(sieved[u] == naive[u]);
          }
        }
      }
    }
  }
}

TEST_CASE("lemma 2 identity") {
  auto report = verify_lemma2(g2, F(12), 25, 1);
  CHECK(report.passed);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].lhs == 12);
  CHECK(report.rows[0].terms == std::vector<std::int64_t>{8, 8, -4});
  CHECK(report.divisors == std::vector<BigInt>{3, 4, 12});

  CHECK(verify_lemma2(g2, F(9), 100000, 5).passed);  // prime power: N = N'
  CHECK(verify_lemma2(g2, F(800), 50000, 8).passed);
  CHECK(verify_lemma2(g3, F(24), 30000, 6).passed);
  CHECK(verify_lemma2(parse_base("-2"), F(36), 30000, 6).passed);
}

TEST_CASE("prime inclusion-exclusion identity") {
  CHECK(verify_prime_inclusion_exclusion(g2, F(12), 100000, 6).passed);
  CHECK(verify_prime_inclusion_exclusion(g3, F(4), 10000, 4).passed);

  auto report = verify_prime_inclusion_exclusion(g2, F(6), 25, 1);
  CHECK(report.passed);
  CHECK(report.rows[0].lhs == 1);  // only p = 23 (ord 11)
}

TEST_CASE("determinism across worker counts and segment sizes") {
  auto reference = count_series(g2, F(12), 50000, CountMode::N, 8);
  for (int threads : {1, 2, 4}) {
    for (std::uint64_t seg : {0ull, 1024ull, 4096ull}) {
      SieveOptions opts;
      opts.threads = threads;
      opts.segment_size = seg;
      auto table = count_series(g2, F(12), 50000, CountMode::N, 8, opts);
      CHECK(table.checkpoints == reference.checkpoints);
    }
  }
}

TEST_CASE("multi-segment parallel runs match the naive loop") {
  SieveOptions opts;
  opts.threads = 3;
  opts.segment_size = 4096;  // forces many segments round-robined over workers
  for (CountMode mode : {CountMode::N, CountMode::NDoublePrime, CountMode::P}) {
    auto sieved = sieve_membership(g2, F(12), 60000, mode, opts);
    auto naive = testsupport::naive_membership(g2, F(12), 60000, mode);
    bool equal = true;
    for (std::uint64_t u = 1; u <= 60000 && equal; ++u) equal = sieved[u] == naive[u];
    CHECK(equal);
  }
}

TEST_CASE("tracked modulus limits") {
  // more than 8 distinct primes is out of contract for the sieve
  FactoredInteger wide = factorize(std::uint64_t(2) * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23);
  CHECK_THROWS_AS(count_series(g2, wide, 1000, CountMode::N, 1), Error);
  // component exponents above 15 as well
  FactoredInteger tall = factorize(std::uint64_t(1) << 16);
  CHECK_THROWS_AS(count_series(g3, tall, 1000, CountMode::N, 1), Error);
}

TEST_CASE("complete multiplicativity") {
  auto report = check_complete_multiplicativity(g2, F(12), 100000, 2000);
  CHECK(report.passed);
  CHECK(report.failures.empty());

  // known member and non-member pairs
  OrderCalculator calc(g2);
  auto member = [&](std::uint64_t u) {
    std::uint64_t ord = calc.order(u);
    return ord % 3 != 0 && ord % 4 != 0;
  };
  CHECK(member(3));
  CHECK(member(11));
  CHECK(member(33));   // ord_2(33) = 10
  CHECK(!member(7));   // 3 | ord_2(7) = 3
  CHECK(!member(49));  // 3 | ord_2(49) = 21
}

TEST_CASE("congruence characterization") {
  CHECK(congruence_characterization(g2, F(6), 10000).passed);
  CHECK(congruence_characterization(g2, F(2), 1000).passed);
  CHECK(congruence_characterization(g3, F(15), 1000).passed);
  CHECK_THROWS_AS(congruence_characterization(g2, F(12), 1000), Error);  // not squarefree
}

TEST_CASE("logarithmic integral") {
  CHECK(std::abs(logarithmic_integral(2.0) - 1.045163780) < 1e-8);
  CHECK(std::abs(logarithmic_integral(1e6) - 78627.549159) < 1e-3);
  CHECK_THROWS_AS(logarithmic_integral(1.5), Error);

  double prev = 0;
  for (double x : {2.0, 10.0, 100.0, 1e4, 1e6, 1e8}) {
    double li = logarithmic_integral(x);
    CHECK(li > prev);
    prev = li;
  }

  // pi(10^6) = 78498; li overshoots by ~0.165%
  CHECK(count_primes(1000000) == 78498);
  CHECK(std::abs(logarithmic_integral(1e6) / 78498.0 - 1.0) <= 0.002);
}

TEST_CASE("normalized series") {
  auto table = count_series(g2, F(2), 100000, CountMode::P, 8);
  auto rows = normalized_series(table);
  REQUIRE(!rows.empty());
  // P-mode normalization trends to 1
  CHECK(std::abs(rows.back().second - 1.0) < 0.05);
  for (const auto& [x, v] : rows) CHECK(x >= 2);
}

TEST_CASE("count mode parsing") {
  CHECK(parse_count_mode("N") == CountMode::N);
  CHECK(parse_count_mode("nprime") == CountMode::NPrime);
  CHECK(parse_count_mode("Ndoubleprime") == CountMode::NDoublePrime);
  CHECK(parse_count_mode("p") == CountMode::P);
  CHECK(parse_count_mode("Pprime") == CountMode::PPrime);
  CHECK_THROWS_AS(parse_count_mode("bogus"), Error);
  CHECK(std::string(count_mode_name(CountMode::NPrime)) == "Nprime");
}

TEST_CASE("resource guard") {
  SieveOptions opts;
  opts.memory_mb = 1;
  CHECK_THROWS_AS(count_series(g2, F(12), 50'000'000, CountMode::N, 4, opts), Error);
}
