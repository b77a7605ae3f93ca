#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ordena/base.hpp"
#include "ordena/coincidence.hpp"
#include "ordena/rational.hpp"

namespace ordena {

// Exact-valuation constraints {nu_{p1}(m) = e1, nu_{p2}(m) = e2} coming from
// one coincident pair delta_g(p1^e1) = delta_g(p2^e2).
struct ValuationPattern {
  std::vector<std::pair<std::uint64_t, unsigned>> constraints;  // (prime, exact valuation)
  CoincidenceQuadruple source;
};

std::vector<ValuationPattern> coincidence_patterns(const Base& g, std::uint64_t pmax = 11,
                                                   unsigned emax = 6);

// Natural density of integers m with no pattern fully active, computed by
// enumerating the joint distribution of capped valuations (exact tail state
// per prime). 1 when there are no patterns.
Rational unique_pattern_density(const Base& g);
Rational unique_pattern_density_from(const std::vector<ValuationPattern>& patterns);

// Second route for the same density defect: pairwise inclusion-exclusion
// over pattern subsets. Returns the *bad* density (1 - unique density).
Rational bad_density_inclusion_exclusion(const std::vector<ValuationPattern>& patterns);

// Exact count of m <= limit with some pattern fully active.
std::uint64_t scan_bad(const Base& g, std::uint64_t limit, int threads = 1);

}  // namespace ordena
