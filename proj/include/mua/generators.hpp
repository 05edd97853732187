#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "mua/domain.hpp"

namespace mua {

// Seeded random family with weakly dominating marginals: for each quantity,
// `size` marginal values are drawn uniformly in 0..max_marginal and sorted, so
// higher-indexed valuations gain at least as much from every extra item.
// Deterministic in `seed`.
Domain gen_random_single_crossing(std::uint64_t seed, int size, int m,
                                  std::int64_t max_marginal);

// Same construction restricted to a step set: marginals are zero except at the
// given quantities, so every member valuation changes value only there.
Domain gen_random_k_minded(std::uint64_t seed, int size, int m,
                           const KMindedStructure& steps,
                           std::int64_t max_marginal);

// Predicate pairing each scalar x with the quantities that carry its unit
// bonus in the two-player separation construction. Must be total: every x has
// at least one accepting quantity.
using WitnessPredicate = std::function<bool(int x, int s)>;

// Default witness for m items: x >= 2 accepts quantity x; x = 0 accepts m;
// x = 1 accepts m-1. Total and single-valued.
WitnessPredicate default_witness(int m);

// Two-player scalar families over m = 2^n_bits items, indexed by x in 0..m-1:
//   first  player: 0 at 0, else 10^n_bits + 10x + 4sx, plus 1 when s > 1 and
//                  witness(x, s) holds;
//   second player: 4sx.
// first = .first, second = .second of the returned pair.
std::pair<Domain, Domain> gen_separation_domains(int n_bits,
                                                 WitnessPredicate witness = {});

// Two-player families over m = 2^num_vars items indexed by formula ordinal x:
//   first  player: 4sx, plus 1 when s >= 1 and assignment (s mod m) satisfies
//                  the formula with ordinal x;
//   second player: 4sx.
// The family has one member per subset of the clause universe and is evaluated
// lazily. num_vars is capped at 4 (the universe ordinal must stay addressable).
std::pair<Domain, Domain> gen_sat_twoplayer_domains(int num_vars);

// Quantity rule used by the payment-identity check, over m = 2^num_vars:
//   f(theta) = floor(theta) at the endpoints {0, m};
//   otherwise floor(theta), plus 1 when assignment floor(theta) satisfies the
//   formula. The second player always receives 0.
struct PaymentHardnessRule {
  int m = 0;
  CnfFormula formula;

  // Quantities handed to the two players at report theta in [0, m].
  Allocation alloc(const Rat& theta) const;
};

PaymentHardnessRule gen_payment_hardness_instance(int num_vars,
                                                  const CnfFormula& formula);

// Linear scalar family: member t in 0..size-1 values quantity s at t*s. The
// discretized bidder space the payment-identity instances are written over.
Domain gen_scalar_domain(int m, int size);

// Family over m items (m a power of two >= 4) with floor(m / log2 m) members.
// Member x (1-based) is 0 up to m - x*log2(m), doubles per item across the
// next log2(m) quantities (2, 4, 8, ...), and above that block repeats the
// previous member's marginals. Every quantity a member is positive at is
// essential: dropping any quantity from the identity sketch halves some value.
Domain gen_nosketch_domain(int m);

}  // namespace mua
