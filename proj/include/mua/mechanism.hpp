#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mua/generators.hpp"
#include "mua/payments.hpp"
#include "mua/rounding.hpp"
#include "mua/solver.hpp"

namespace mua {

struct MechanismDiagnostics {
  RoundingParam delta;
  std::vector<bool> rewarded;    // per player: received the high-bidder bonus
  std::vector<int> sketch_sizes; // per player, when sketches were built
};

struct MechanismResult {
  Allocation allocation;
  std::optional<std::vector<Rat>> payments;
  Int welfare = 0;  // with respect to the reported valuations
  MechanismDiagnostics diagnostics;
};

// Approximation scheme for players whose valuations change value only at
// fixed per-player quantities (step_sets). Rounds marginals to a granularity
// chosen from epsilon, boosts high bidders so they survive granularity
// changes, and solves exactly over the rounded values. Welfare is at least
// (1 - epsilon) of the optimum; each player's quantity is non-decreasing in
// their report. All-zero reports short-circuit to the empty outcome.
MechanismResult fptas_k_minded(const AuctionInstance& instance,
                               const std::vector<KMindedStructure>& step_sets,
                               const Rat& epsilon);

// General single-crossing families: builds a report-independent sketch per
// player at accuracy epsilon/(2n), projects the reported valuations onto it,
// and runs the step-quantity scheme at epsilon/2. Allocations land on sketch
// quantities (rounded down defensively).
MechanismResult fptas_general(const AuctionInstance& instance, const Rat& epsilon);

// Same, with the per-player sketches precomputed (they depend only on the
// families, so bulk evaluations over report profiles should reuse them).
MechanismResult fptas_general_with_sketches(const AuctionInstance& instance,
                                            const std::vector<Sketch>& sketches,
                                            const Rat& epsilon);

// Single-minded bidders: each reports a (value, quantity) bid. Values are
// floored to a power-of-4 granularity, the highest-value bidder (lowest index
// on ties) gets a 2n-granularity boost, and the exact solver runs over the
// two-point menus {0, quantity}. Winners receive exactly their demanded
// quantity.
MechanismResult fptas_single_minded(const SingleMindedInstance& instance,
                                    const Rat& epsilon);

// Exact welfare maximization (granularity 1 over the raw values) with
// externality payments: each player pays the optimum of the others alone
// minus the others' welfare in the chosen allocation.
MechanismResult vcg_exact(const AuctionInstance& instance);

// --- Two-player scalar construction with the unit-bonus objective ---------

struct SeparationInstance {
  int n_bits = 0;
  int m = 0;          // 2^n_bits
  Domain first;       // scalar family with the constant and bonus terms
  Domain second;      // plain 4sx family
  WitnessPredicate witness;

  AuctionInstance auction(int a, int b) const {
    return AuctionInstance{m, {first, second}, {Int(a), Int(b)}};
  }
};

SeparationInstance make_separation_instance(int n_bits, WitnessPredicate witness = {});

// Objective over allocations given reports (a, b):
//   a > b: 2 for handing everything to the first player;
//   b > a: 2 for the split (1, m-1);
//   a = b: 2 for any full split whose first-player share is a witness
//          quantity of a, 1 for handing everything to the second player;
//   0 otherwise.
int separation_score(const SeparationInstance& inst, int a, int b,
                     const Allocation& alloc);

// Fast scoring rule: (m, 0) when a > b, (1, m-1) when b > a, (0, m) on ties.
// Always scores at least 1, hence at least half the best score, but is not
// monotone even up to tie breaking.
Allocation separation_greedy(const SeparationInstance& inst, int a, int b);

// --- Payment identity for the quantity rule derived from a formula --------

struct PaymentHardnessOutcome {
  Rat lhs;  // m*f(m) minus the rule's quantities sampled once per unit interval
  Rat rhs;  // (m^2 + m)/2 minus the satisfying-assignment count
  bool equal = false;
};

// Evaluates the first player's summed-quantity payment expression for the
// rule gen_payment_hardness_instance(num_vars, formula) and compares it with
// the closed form; the two agree exactly, which ties the payment's value to
// counting satisfying assignments.
PaymentHardnessOutcome payment_hardness_check(int num_vars, const CnfFormula& formula);

}  // namespace mua
