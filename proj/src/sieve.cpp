#include "ordena/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "ordena/errors.hpp"
#include "ordena/modmath.hpp"
#include "ordena/order.hpp"

namespace ordena {

namespace {

constexpr unsigned kMaxLanes = 8;
constexpr unsigned kMaxCap = 15;
constexpr std::uint64_t kDefaultMemMb = 2048;
constexpr std::uint64_t kDefaultSegment = std::uint64_t(1) << 22;
constexpr unsigned kMaxCheckpoints = 4096;

std::uint32_t isqrt_u64(std::uint64_t x) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return static_cast<std::uint32_t>(r);
}

std::uint64_t memory_budget_bytes(const SieveOptions& opts) {
  std::uint64_t mb = opts.memory_mb;
  if (mb == 0) {
    if (const char* env = std::getenv("ORDENA_MEM_MB")) {
      char* end = nullptr;
      std::uint64_t v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) mb = v;
    }
  }
  if (mb == 0) mb = kDefaultMemMb;
  return mb << 20;
}

// The per-u state the sieve actually tracks: capped valuations
// nu_{q_j}(ord_g(u)) packed four bits per lane.
struct Tracked {
  std::vector<std::uint64_t> primes;
  std::vector<unsigned> caps;
  unsigned r = 0;
  std::uint32_t full = 0;
};

Tracked make_tracked(const FactoredInteger& m) {
  if (m.factors.size() > kMaxLanes)
    fail(Errc::unsupported, "sieve: modulus has more than 8 distinct primes");
  Tracked t;
  for (const auto& f : m.factors) {
    if (f.exponent > kMaxCap)
      fail(Errc::unsupported, "sieve: component exponent above 15 is not supported");
    t.primes.push_back(f.prime);
    t.caps.push_back(static_cast<unsigned>(f.exponent));
  }
  t.r = static_cast<unsigned>(t.primes.size());
  t.full = (t.r == 32) ? ~0u : ((1u << t.r) - 1);
  return t;
}

inline std::uint32_t lane_get(std::uint32_t packed, unsigned j) { return (packed >> (4 * j)) & 0xF; }

inline std::uint32_t lanes_max(std::uint32_t a, std::uint32_t b, unsigned r) {
  std::uint32_t out = 0;
  for (unsigned j = 0; j < r; ++j) {
    std::uint32_t x = lane_get(a, j), y = lane_get(b, j);
    out |= (x > y ? x : y) << (4 * j);
  }
  return out;
}

// blocked-component bitmask: bit j set iff q_j^{e_j} | ord
inline std::uint32_t blocked_mask(std::uint32_t lanes, const Tracked& t) {
  std::uint32_t mask = 0;
  for (unsigned j = 0; j < t.r; ++j)
    if (lane_get(lanes, j) >= t.caps[j]) mask |= 1u << j;
  return mask;
}

bool mode_counts(CountMode mode, std::uint32_t mask, std::uint32_t full, bool coprime) {
  switch (mode) {
    case CountMode::N: return mask != full;
    case CountMode::NPrime: return mask == 0;
    case CountMode::NDoublePrime: return mask == 0 && coprime;
    case CountMode::P: return mask == full;
    case CountMode::PPrime: return mask == 0;
  }
  return false;
}

std::uint32_t pack_order_valuations(std::uint64_t ord, const Tracked& t) {
  std::uint32_t packed = 0;
  for (unsigned j = 0; j < t.r; ++j) {
    std::uint64_t v = valuation_unchecked(t.primes[j], ord);
    if (v > t.caps[j]) v = t.caps[j];
    packed |= static_cast<std::uint32_t>(v) << (4 * j);
  }
  return packed;
}

// Per-prime lane computation by the strip-one-prime route: for each tracked
// q, write p-1 = q^a * t, then nu_q(ord) is the number of q-th powerings
// that g^t needs to reach 1 mod p.
struct PrimeLaneCtx {
  const Base* g;
  const Tracked* t;

  std::uint64_t residue(std::uint64_t p) const {
    std::uint64_t num = 1, den = 1;
    for (const auto& f : g->num.factors)
      num = mulmod_u64(num, powmod_u64(f.prime % p, f.exponent, p), p);
    for (const auto& f : g->den.factors)
      den = mulmod_u64(den, powmod_u64(f.prime % p, f.exponent, p), p);
    std::uint64_t res = mulmod_u64(num, invmod_u64(den, p), p);
    if (g->sign < 0) res = (p - res) % p;
    return res;
  }

  std::uint32_t lanes(std::uint64_t p) const {
    if (p == 2) return 0;
    std::uint64_t res = residue(p);
    std::uint32_t packed = 0;
    for (unsigned j = 0; j < t->r; ++j) {
      std::uint64_t q = t->primes[j];
      std::uint64_t rest = p - 1;
      unsigned a = 0;
      while (rest % q == 0) {
        rest /= q;
        ++a;
      }
      if (a == 0) continue;
      std::uint64_t s = powmod_u64(res, rest, p);
      unsigned c = 0;
      while (s != 1 && c < a) {
        s = powmod_u64(s, q, p);
        ++c;
      }
      if (c > t->caps[j]) c = t->caps[j];
      packed |= static_cast<std::uint32_t>(c) << (4 * j);
    }
    return packed;
  }
};

bool in_support(const std::vector<std::uint64_t>& support, std::uint64_t p) {
  for (std::uint64_t s : support)
    if (s == p) return true;
  return false;
}

bool tracked_contains(const Tracked& t, std::uint64_t p) {
  for (std::uint64_t q : t.primes)
    if (q == p) return true;
  return false;
}

// census layout: [bucket][mask][coprime] for integer modes, coprime fixed
// to 1 for prime modes.
struct Census {
  unsigned nbuckets = 0;
  unsigned nmasks = 0;
  std::vector<std::uint64_t> counts;

  Census() = default;
  Census(unsigned buckets, unsigned masks) : nbuckets(buckets), nmasks(masks) {
    counts.assign(std::size_t(buckets) * masks * 2, 0);
  }
  std::uint64_t& at(unsigned bucket, std::uint32_t mask, bool coprime) {
    return counts[(std::size_t(bucket) * nmasks + mask) * 2 + (coprime ? 1 : 0)];
  }
  std::uint64_t get(unsigned bucket, std::uint32_t mask, bool coprime) const {
    return counts[(std::size_t(bucket) * nmasks + mask) * 2 + (coprime ? 1 : 0)];
  }
  void merge(const Census& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  }
};

struct EngineInput {
  const Base* g;
  Tracked tracked;
  std::uint64_t x;
  std::vector<std::uint64_t> cps;
  int threads;
  std::uint64_t budget;
  std::uint64_t segment_size;
  std::vector<std::uint8_t>* bitmap = nullptr;  // optional per-u membership
  CountMode bitmap_mode = CountMode::N;

  std::uint64_t initial_segment() const {
    std::uint64_t seg = segment_size ? segment_size : kDefaultSegment;
    seg = std::max<std::uint64_t>(seg, std::uint64_t(1) << 10);
    return std::min(seg, x);
  }
};

unsigned bucket_of(const std::vector<std::uint64_t>& cps, std::uint64_t u) {
  return static_cast<unsigned>(std::lower_bound(cps.begin(), cps.end(), u) - cps.begin());
}

// ---- prime engine: walks primes p <= x, no composite machinery ----

Census run_prime_engine(const EngineInput& in) {
  const std::uint64_t x = in.x;
  const unsigned nmasks = in.tracked.full + 1;
  Census total(static_cast<unsigned>(in.cps.size()), nmasks);
  if (x < 2) return total;

  const std::uint32_t sqrt_x = isqrt_u64(x);
  const std::vector<std::uint32_t> smalls = primes_up_to(sqrt_x);
  const PrimeLaneCtx ctx{in.g, &in.tracked};

  std::uint64_t seg_size = in.initial_segment();
  const std::uint64_t nseg = (x - 1) / seg_size + 1;
  const int nthreads = std::max(1, in.threads);

  std::vector<Census> partial(nthreads, Census(static_cast<unsigned>(in.cps.size()), nmasks));
  auto worker = [&](int w) {
    std::vector<std::uint8_t> composite(seg_size);
    for (std::uint64_t seg = w; seg < nseg; seg += nthreads) {
      const std::uint64_t lo = seg * seg_size + 1;
      const std::uint64_t hi = std::min(x, lo + seg_size - 1);
      std::fill(composite.begin(), composite.begin() + (hi - lo + 1), 0);
      if (lo == 1) composite[0] = 1;
      for (std::uint32_t p : smalls) {
        std::uint64_t start = std::max<std::uint64_t>(std::uint64_t(p) * p, ((lo + p - 1) / p) * p);
        for (std::uint64_t v = start; v <= hi; v += p) composite[v - lo] = 1;
      }
      unsigned bucket = bucket_of(in.cps, lo);
      for (std::uint64_t u = lo; u <= hi; ++u) {
        if (composite[u - lo]) continue;
        while (in.cps[bucket] < u) ++bucket;
        if (in_support(in.g->support, u)) continue;
        std::uint32_t mask = blocked_mask(ctx.lanes(u), in.tracked);
        partial[w].at(bucket, mask, true) += 1;
        if (in.bitmap)
          (*in.bitmap)[u] = mode_counts(in.bitmap_mode, mask, in.tracked.full, true) ? 1 : 0;
      }
    }
  };

  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& c : partial) total.merge(c);
  return total;
}

// ---- integer engine: full factorization of every u <= x ----

Census run_integer_engine(const EngineInput& in) {
  const std::uint64_t x = in.x;
  const unsigned nmasks = in.tracked.full + 1;
  Census total(static_cast<unsigned>(in.cps.size()), nmasks);

  const std::uint32_t sqrt_x = isqrt_u64(x);
  const std::vector<std::uint32_t> smalls = primes_up_to(sqrt_x);
  const PrimeLaneCtx ctx{in.g, &in.tracked};

  std::uint64_t seg_size = in.initial_segment();
  std::uint64_t table_bytes = 4 * (x + 1);
  const int nthreads = std::max(1, in.threads);
  // per-u segment state: rem (8) + lanes (4) + flags (1)
  while (table_bytes + std::uint64_t(nthreads) * seg_size * 13 > in.budget &&
         seg_size > (std::uint64_t(1) << 16))
    seg_size >>= 1;
  if (table_bytes + std::uint64_t(nthreads) * seg_size * 13 > in.budget)
    fail(Errc::resource, "sieve: x too large for the configured memory budget");

  // sequential warm phase: lane records for small prime powers p^k <= x
  OrderCalculator calc(*in.g);
  std::vector<std::uint8_t> small_support(smalls.size(), 0);
  std::vector<std::vector<std::uint32_t>> spp(smalls.size());
  for (std::size_t i = 0; i < smalls.size(); ++i) {
    const std::uint64_t p = smalls[i];
    if (in_support(in.g->support, p)) {
      small_support[i] = 1;
      continue;
    }
    std::uint64_t pk = 1;
    for (unsigned k = 1; pk <= x / p; ++k) {
      pk *= p;
      spp[i].push_back(pack_order_valuations(calc.order_prime_power(p, k), in.tracked));
    }
  }

  // capped q-valuations of ord_g(p) for every prime p in (sqrt_x, x]
  std::vector<std::uint32_t> table(x + 1, 0);
  {
    const std::uint64_t nseg = (x - 1) / seg_size + 1;
    auto fill_worker = [&](int w) {
      std::vector<std::uint8_t> composite(seg_size);
      for (std::uint64_t seg = w; seg < nseg; seg += nthreads) {
        const std::uint64_t lo = seg * seg_size + 1;
        const std::uint64_t hi = std::min(x, lo + seg_size - 1);
        if (hi <= sqrt_x) continue;
        std::fill(composite.begin(), composite.begin() + (hi - lo + 1), 0);
        if (lo == 1) composite[0] = 1;
        for (std::uint32_t p : smalls) {
          std::uint64_t start = std::max<std::uint64_t>(std::uint64_t(p) * p, ((lo + p - 1) / p) * p);
          for (std::uint64_t v = start; v <= hi; v += p) composite[v - lo] = 1;
        }
        for (std::uint64_t u = std::max(lo, std::uint64_t(sqrt_x) + 1); u <= hi; ++u) {
          if (composite[u - lo]) continue;
          if (u <= sqrt_x || in_support(in.g->support, u)) continue;
          table[u] = ctx.lanes(u);
        }
      }
    };
    if (nthreads == 1) {
      fill_worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < nthreads; ++w) pool.emplace_back(fill_worker, w);
      for (auto& t : pool) t.join();
    }
  }

  const std::uint64_t nseg = (x - 1) / seg_size + 1;
  std::vector<Census> partial(nthreads, Census(static_cast<unsigned>(in.cps.size()), nmasks));

  auto worker = [&](int w) {
    std::vector<std::uint64_t> rem(seg_size);
    std::vector<std::uint32_t> lanes(seg_size);
    std::vector<std::uint8_t> flags(seg_size);  // bit0: excluded, bit1: shares a prime with m
    for (std::uint64_t seg = w; seg < nseg; seg += nthreads) {
      const std::uint64_t lo = seg * seg_size + 1;
      const std::uint64_t hi = std::min(x, lo + seg_size - 1);
      const std::uint64_t n = hi - lo + 1;
      for (std::uint64_t i = 0; i < n; ++i) rem[i] = lo + i;
      std::fill(lanes.begin(), lanes.begin() + n, 0);
      std::fill(flags.begin(), flags.begin() + n, 0);

      for (std::size_t i = 0; i < smalls.size(); ++i) {
        const std::uint64_t p = smalls[i];
        const std::uint64_t start = ((lo + p - 1) / p) * p;
        if (small_support[i]) {
          for (std::uint64_t v = start; v <= hi; v += p) flags[v - lo] |= 1;
          continue;
        }
        const bool in_m = tracked_contains(in.tracked, p);
        for (std::uint64_t v = start; v <= hi; v += p) {
          const std::uint64_t idx = v - lo;
          unsigned k = 0;
          while (rem[idx] % p == 0) {
            rem[idx] /= p;
            ++k;
          }
          lanes[idx] = lanes_max(lanes[idx], spp[i][k - 1], in.tracked.r);
          if (in_m) flags[idx] |= 2;
        }
      }

      unsigned bucket = bucket_of(in.cps, lo);
      for (std::uint64_t u = lo; u <= hi; ++u) {
        const std::uint64_t idx = u - lo;
        while (in.cps[bucket] < u) ++bucket;
        if (flags[idx] & 1) {
          if (in.bitmap) (*in.bitmap)[u] = 0;
          continue;
        }
        std::uint32_t l = lanes[idx];
        std::uint8_t f = flags[idx];
        const std::uint64_t q = rem[idx];
        if (q > 1) {
          if (in_support(in.g->support, q)) {
            if (in.bitmap) (*in.bitmap)[u] = 0;
            continue;
          }
          l = lanes_max(l, table[q], in.tracked.r);
          if (tracked_contains(in.tracked, q)) f |= 2;
        }
        const std::uint32_t mask = blocked_mask(l, in.tracked);
        const bool coprime = (f & 2) == 0;
        partial[w].at(bucket, mask, coprime) += 1;
        if (in.bitmap)
          (*in.bitmap)[u] = mode_counts(in.bitmap_mode, mask, in.tracked.full, coprime) ? 1 : 0;
      }
    }
  };

  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& c : partial) total.merge(c);
  return total;
}

Rational predicted_exponent_for(const Base& g, const FactoredInteger& m, CountMode mode) {
  switch (mode) {
    case CountMode::N: return m.is_one() ? Rational(0) : gamma_min(g, m);
    case CountMode::NPrime:
    case CountMode::NDoublePrime: return Rational(1) - delta_prime(g, m);
    case CountMode::P: return delta(g, m);
    case CountMode::PPrime: return delta_prime(g, m);
  }
  return Rational(0);
}

EngineInput make_input(const Base& g, const FactoredInteger& m, std::uint64_t x,
                       unsigned checkpoints, const SieveOptions& opts) {
  if (x < 1) fail(Errc::invalid_argument, "sieve: x must be positive");
  if (checkpoints < 1) fail(Errc::invalid_argument, "sieve: need at least one checkpoint");
  if (checkpoints > kMaxCheckpoints) fail(Errc::invalid_argument, "sieve: too many checkpoints");
  EngineInput in;
  in.g = &g;
  in.tracked = make_tracked(m);
  in.x = x;
  in.cps = checkpoint_grid(x, checkpoints);
  in.threads = std::max(1, opts.threads);
  in.budget = memory_budget_bytes(opts);
  in.segment_size = opts.segment_size;
  return in;
}

std::vector<std::uint64_t> census_counts(const Census& census,
                                         const std::vector<std::uint64_t>& cps, CountMode mode,
                                         std::uint32_t full) {
  std::vector<std::uint64_t> out(cps.size(), 0);
  std::uint64_t running = 0;
  for (unsigned k = 0; k < cps.size(); ++k) {
    for (std::uint32_t mask = 0; mask < census.nmasks; ++mask)
      for (int cop = 0; cop <= 1; ++cop)
        if (mode_counts(mode, mask, full, cop == 1)) running += census.get(k, mask, cop == 1);
    out[k] = running;
  }
  return out;
}

}  // namespace

CountMode parse_count_mode(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "n") return CountMode::N;
  if (s == "nprime" || s == "n'") return CountMode::NPrime;
  if (s == "ndoubleprime" || s == "n''") return CountMode::NDoublePrime;
  if (s == "p") return CountMode::P;
  if (s == "pprime" || s == "p'") return CountMode::PPrime;
  fail(Errc::invalid_argument, "unknown counting mode: " + name);
}

const char* count_mode_name(CountMode mode) {
  switch (mode) {
    case CountMode::N: return "N";
    case CountMode::NPrime: return "Nprime";
    case CountMode::NDoublePrime: return "Ndoubleprime";
    case CountMode::P: return "P";
    case CountMode::PPrime: return "Pprime";
  }
  return "?";
}

bool is_prime_mode(CountMode mode) {
  return mode == CountMode::P || mode == CountMode::PPrime;
}

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t x, unsigned n) {
  if (n == 0) fail(Errc::invalid_argument, "checkpoint_grid: need at least one point");
  std::vector<std::uint64_t> cps;
  const long double lx = std::log(static_cast<long double>(x));
  for (unsigned i = 1; i < n; ++i) {
    long double v = std::exp(lx * i / n);
    std::uint64_t u = static_cast<std::uint64_t>(std::llround(static_cast<double>(v)));
    if (u < 1) u = 1;
    if (u > x) u = x;
    cps.push_back(u);
  }
  cps.push_back(x);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

CountTable count_series(const Base& g, const FactoredInteger& m, std::uint64_t x, CountMode mode,
                        unsigned checkpoints, const SieveOptions& opts) {
  EngineInput in = make_input(g, m, x, checkpoints, opts);
  Census census = is_prime_mode(mode) ? run_prime_engine(in) : run_integer_engine(in);
  std::vector<std::uint64_t> counts = census_counts(census, in.cps, mode, in.tracked.full);

  CountTable table;
  table.mode = mode;
  table.base_text = g.text;
  table.modulus = m.value;
  table.predicted_exponent = predicted_exponent_for(g, m, mode);
  for (unsigned k = 0; k < in.cps.size(); ++k) table.checkpoints.push_back({in.cps[k], counts[k]});
  return table;
}

std::vector<std::uint8_t> sieve_membership(const Base& g, const FactoredInteger& m,
                                           std::uint64_t x, CountMode mode,
                                           const SieveOptions& opts) {
  EngineInput in = make_input(g, m, x, 1, opts);
  std::vector<std::uint8_t> bitmap(x + 1, 0);
  in.bitmap = &bitmap;
  in.bitmap_mode = mode;
  if (is_prime_mode(mode))
    run_prime_engine(in);
  else
    run_integer_engine(in);
  return bitmap;
}

IdentityReport verify_lemma2(const Base& g, const FactoredInteger& m, std::uint64_t x,
                             unsigned checkpoints, const SieveOptions& opts) {
  if (m.value < 2) fail(Errc::invalid_argument, "verify_lemma2: m must be >= 2");
  EngineInput in = make_input(g, m, x, checkpoints, opts);
  Census census = run_integer_engine(in);

  IdentityReport report;
  report.passed = true;

  std::vector<std::uint32_t> divisor_masks;
  for (std::uint32_t mask = 1; mask <= in.tracked.full; ++mask) divisor_masks.push_back(mask);
  std::sort(divisor_masks.begin(), divisor_masks.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              BigInt va = 1, vb = 1;
              for (unsigned j = 0; j < in.tracked.r; ++j) {
                BigInt pe = boost::multiprecision::pow(BigInt(in.tracked.primes[j]),
                                                      in.tracked.caps[j]);
                if (a & (1u << j)) va *= pe;
                if (b & (1u << j)) vb *= pe;
              }
              return va < vb;
            });
  for (std::uint32_t dm : divisor_masks) {
    BigInt v = 1;
    for (unsigned j = 0; j < in.tracked.r; ++j)
      if (dm & (1u << j))
        v *= boost::multiprecision::pow(BigInt(in.tracked.primes[j]), in.tracked.caps[j]);
    report.divisors.push_back(v);
    report.signs.push_back(std::popcount(dm) % 2 == 1 ? 1 : -1);  // -mu(kappa(d))
  }

  // prefix-summed census per mask
  std::vector<std::uint64_t> acc(in.tracked.full + 1, 0);
  for (unsigned k = 0; k < in.cps.size(); ++k) {
    for (std::uint32_t mask = 0; mask <= in.tracked.full; ++mask)
      acc[mask] += census.get(k, mask, false) + census.get(k, mask, true);

    IdentityRow row;
    row.x = in.cps[k];
    row.lhs = 0;
    for (std::uint32_t mask = 0; mask <= in.tracked.full; ++mask)
      if (mask != in.tracked.full) row.lhs += acc[mask];

    row.rhs = 0;
    for (std::size_t i = 0; i < divisor_masks.size(); ++i) {
      std::uint32_t dm = divisor_masks[i];
      std::uint64_t nprime = 0;  // u with no blocked component inside dm
      for (std::uint32_t mask = 0; mask <= in.tracked.full; ++mask)
        if ((mask & dm) == 0) nprime += acc[mask];
      std::int64_t term = report.signs[i] * static_cast<std::int64_t>(nprime);
      row.terms.push_back(term);
      row.rhs += term;
    }
    row.ok = static_cast<std::int64_t>(row.lhs) == row.rhs;
    if (!row.ok) report.passed = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

IdentityReport verify_prime_inclusion_exclusion(const Base& g, const FactoredInteger& d,
                                                std::uint64_t x, unsigned checkpoints,
                                                const SieveOptions& opts) {
  if (d.value < 2) fail(Errc::invalid_argument, "verify_prime_inclusion_exclusion: d must be >= 2");
  EngineInput in = make_input(g, d, x, checkpoints, opts);
  Census census = run_prime_engine(in);

  IdentityReport report;
  report.passed = true;

  std::vector<std::uint32_t> divisor_masks;
  for (std::uint32_t mask = 0; mask <= in.tracked.full; ++mask) divisor_masks.push_back(mask);
  std::sort(divisor_masks.begin(), divisor_masks.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              BigInt va = 1, vb = 1;
              for (unsigned j = 0; j < in.tracked.r; ++j) {
                BigInt pe = boost::multiprecision::pow(BigInt(in.tracked.primes[j]),
                                                      in.tracked.caps[j]);
                if (a & (1u << j)) va *= pe;
                if (b & (1u << j)) vb *= pe;
              }
              return va < vb;
            });
  for (std::uint32_t dm : divisor_masks) {
    BigInt v = 1;
    for (unsigned j = 0; j < in.tracked.r; ++j)
      if (dm & (1u << j))
        v *= boost::multiprecision::pow(BigInt(in.tracked.primes[j]), in.tracked.caps[j]);
    report.divisors.push_back(v);
    report.signs.push_back(std::popcount(dm) % 2 == 0 ? 1 : -1);  // mu(kappa(j))
  }

  std::vector<std::uint64_t> acc(in.tracked.full + 1, 0);
  for (unsigned k = 0; k < in.cps.size(); ++k) {
    for (std::uint32_t mask = 0; mask <= in.tracked.full; ++mask)
      acc[mask] += census.get(k, mask, true);

    IdentityRow row;
    row.x = in.cps[k];
    row.lhs = acc[0];  // P': every component unblocked

    row.rhs = 0;
    for (std::size_t i = 0; i < divisor_masks.size(); ++i) {
      std::uint32_t dm = divisor_masks[i];
      std::uint64_t pj = 0;  // primes with dm fully blocked, i.e. d_T | ord
      for (std::uint32_t mask = 0; mask <= in.tracked.full; ++mask)
        if ((mask & dm) == dm) pj += acc[mask];
      std::int64_t term = report.signs[i] * static_cast<std::int64_t>(pj);
      row.terms.push_back(term);
      row.rhs += term;
    }
    row.ok = static_cast<std::int64_t>(row.lhs) == row.rhs;
    if (!row.ok) report.passed = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

MultiplicativityReport check_complete_multiplicativity(const Base& g, const FactoredInteger& m,
                                                       std::uint64_t x, std::uint64_t trials,
                                                       std::uint64_t seed) {
  if (m.value < 2) fail(Errc::invalid_argument, "check_complete_multiplicativity: m must be >= 2");
  if (x < 4) fail(Errc::invalid_argument, "check_complete_multiplicativity: x too small");
  OrderCalculator calc(g);
  Tracked tracked = make_tracked(m);

  auto coprime_to_m = [&](std::uint64_t u) {
    for (std::uint64_t q : tracked.primes)
      if (u % q == 0) return false;
    return true;
  };
  auto member = [&](std::uint64_t u) {
    std::uint32_t lanes = pack_order_valuations(calc.order(u), tracked);
    return blocked_mask(lanes, tracked) == 0;
  };

  // splitmix64: reproducible across platforms
  std::uint64_t state = seed;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };

  MultiplicativityReport report;
  report.passed = true;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t u, v;
    for (;;) {
      u = 1 + next() % x;
      v = 1 + next() % (x / u == 0 ? 1 : x / u);
      if (in_S(g, u) && in_S(g, v) && coprime_to_m(u) && coprime_to_m(v)) break;
    }
    bool mu = member(u), mv = member(v), muv = member(u * v);
    if (muv != (mu && mv)) {
      report.passed = false;
      report.failures.push_back({u, v, mu, mv, muv});
      if (report.failures.size() >= 16) break;
    }
  }
  return report;
}

CongruenceReport congruence_characterization(const Base& g, const FactoredInteger& d,
                                             std::uint64_t x) {
  if (d.value < 2) fail(Errc::invalid_argument, "congruence_characterization: d must be >= 2");
  for (const auto& f : d.factors)
    if (f.exponent != 1) fail(Errc::domain, "congruence_characterization: d must be squarefree");
  if (x > 1'000'000)
    fail(Errc::invalid_argument, "congruence_characterization: brute-force check capped at 10^6");
  const std::uint64_t dv = d.value.convert_to<std::uint64_t>();

  OrderCalculator calc(g);
  CongruenceReport report;
  report.passed = true;
  report.primes_checked = 0;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(x))) {
    if (!in_S(g, std::uint64_t(p))) continue;
    ++report.primes_checked;
    std::uint64_t ord = calc.order(p);
    bool counted = true;  // P' membership: no prime of d divides ord
    for (const auto& f : d.factors)
      if (ord % f.prime == 0) counted = false;

    std::uint64_t res = calc.residue(p);
    std::uint64_t step = powmod_u64(res, dv, p);
    std::uint64_t cur = 1;
    bool solvable = false;
    for (std::uint64_t y = 0; y < ord; ++y) {
      if (cur == res) {
        solvable = true;
        break;
      }
      cur = mulmod_u64(cur, step, p);
    }
    if (solvable != counted) {
      report.passed = false;
      report.mismatches.push_back(p);
    }
  }
  return report;
}

double logarithmic_integral(double x) {
  if (x < 2) fail(Errc::domain, "logarithmic_integral: defined for x >= 2 here");
  // li(x) = gamma + ln(ln x) + sum_{k>=1} (ln x)^k / (k * k!)
  const long double euler_gamma = 0.57721566490153286060651209008240243L;
  const long double lx = std::log(static_cast<long double>(x));
  long double sum = euler_gamma + std::log(lx);
  long double term = 1.0L;
  for (int k = 1; k < 400; ++k) {
    term *= lx / k;
    long double add = term / k;
    sum += add;
    if (add < 1e-18L * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

std::vector<std::pair<std::uint64_t, double>> normalized_series(const CountTable& table) {
  std::vector<std::pair<std::uint64_t, double>> out;
  const double e = table.predicted_exponent.convert_to<double>();
  for (const auto& [x, count] : table.checkpoints) {
    if (x < 2) continue;
    double value;
    if (is_prime_mode(table.mode)) {
      double li = logarithmic_integral(static_cast<double>(x));
      value = (e > 0) ? static_cast<double>(count) / (e * li) : 0.0;
    } else {
      value = static_cast<double>(count) * std::pow(std::log(static_cast<double>(x)), e) /
              static_cast<double>(x);
    }
    out.push_back({x, value});
  }
  return out;
}

std::uint64_t count_primes(std::uint64_t x) {
  if (x < 2) return 0;
  const std::uint32_t sqrt_x = isqrt_u64(x);
  const std::vector<std::uint32_t> smalls = primes_up_to(sqrt_x);
  const std::uint64_t seg_size = std::min<std::uint64_t>(kDefaultSegment, x);
  std::uint64_t count = 0;
  std::vector<std::uint8_t> composite(seg_size);
  for (std::uint64_t lo = 2; lo <= x; lo += seg_size) {
    const std::uint64_t hi = std::min(x, lo + seg_size - 1);
    std::fill(composite.begin(), composite.begin() + (hi - lo + 1), 0);
    for (std::uint32_t p : smalls) {
      std::uint64_t start = std::max<std::uint64_t>(std::uint64_t(p) * p, ((lo + p - 1) / p) * p);
      for (std::uint64_t v = start; v <= hi; v += p) composite[v - lo] = 1;
    }
    for (std::uint64_t u = lo; u <= hi; ++u)
      if (!composite[u - lo]) ++count;
  }
  return count;
}

}  // namespace ordena
