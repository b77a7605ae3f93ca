#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ordena/base.hpp"
#include "ordena/density.hpp"

namespace ordena {

// A solution of p^{alpha-2}(p^2-1) = q^{beta-2}(q^2-1), p < q primes,
// i.e. C(p, alpha) = C(q, beta).
struct OrderEquationSolution {
  std::uint64_t p;
  unsigned alpha;
  std::uint64_t q;
  unsigned beta;
  friend bool operator==(const OrderEquationSolution&, const OrderEquationSolution&) = default;
  friend auto operator<=>(const OrderEquationSolution&, const OrderEquationSolution&) = default;
};

// The bound-free case analysis (beta >= 3 forces q = p + 1; beta = 2 splits
// on p^b | q+1 / p^b | q-1). Returns the complete solution set.
std::vector<OrderEquationSolution> prop1_structured();

// Plain enumeration of C(p, a) over p <= pmax, a <= emax, grouped by value.
std::vector<OrderEquationSolution> prop1_brute_force(std::uint64_t pmax, unsigned emax);

// Runs both routes, verifies they agree, returns the solutions.
// Requires pmax >= 11 and emax >= 6.
std::vector<OrderEquationSolution> solve_order_equation(std::uint64_t pmax, unsigned emax);

// (p1, e1, p2, e2) with p1 < p2 and delta_g(p1^e1) = delta_g(p2^e2) = value.
struct CoincidenceQuadruple {
  std::uint64_t p1;
  unsigned e1;
  std::uint64_t p2;
  unsigned e2;
  Rational value;

  friend bool operator==(const CoincidenceQuadruple& a, const CoincidenceQuadruple& b) {
    return a.p1 == b.p1 && a.e1 == b.e1 && a.p2 == b.p2 && a.e2 == b.e2 && a.value == b.value;
  }
};

// Exhaustive exact-rational search over p1 < p2 <= pmax, e1, e2 <= emax.
// Requires pmax >= 11 and emax >= 6.
std::vector<CoincidenceQuadruple> coincidence_search(const Base& g, std::uint64_t pmax,
                                                     unsigned emax);

// The five parameterized families, instantiated for g (guards evaluated on h).
std::vector<CoincidenceQuadruple> coincidence_families(const Base& g);

struct GeneratorSet {
  int tau2;
  std::vector<std::uint64_t> members;  // ascending, none divides another
};

// The minimal generator set for exponents h that block every family:
// all 32 lcms of one blocking modulus per family, proper multiples removed.
GeneratorSet derive_generator_sets(int tau2);

struct MullerResult {
  bool muller;
  std::optional<std::uint64_t> witness;  // a generator-set member dividing h
};

// g is a Muller number iff h is divisible by a member of the tau2(g) set,
// equivalently iff coincidence_families(g) is empty.
MullerResult is_muller(const Base& g);

}  // namespace ordena
