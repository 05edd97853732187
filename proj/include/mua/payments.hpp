#pragma once

#include <functional>
#include <vector>

#include "mua/domain.hpp"
#include "mua/numeric.hpp"

namespace mua {

// An allocation rule: report profile (one family index per player) to
// allocation. Callers hand in memoized wrappers when evaluating in bulk.
using AllocFn = std::function<Allocation(const std::vector<Int>&)>;

// Critical-value payments for a per-player monotone rule. For player i with
// report t_i, walks the distinct allocations the rule gives i as the report
// rises from 0 to t_i (binary search per step) and charges, per step, the
// first winning valuation's marginal value between the two allocations. The
// lowest allocation in that image is free, so losing reports pay 0.
// Raises IntegrityError when the rule is detected to be non-monotone.
std::vector<Rat> threshold_payments(const AllocFn& alloc_fn,
                                    const AuctionInstance& instance);

// The summed-marginal form of the same idea: for player i,
//   P_i = v^[t](f_i(v^[t])) - sum_{d=1}^{t} [v^[d](f_i(v^[d-1])) - v^[d-1](f_i(v^[d-1]))],
// evaluating the rule at every report below t_i. Refuses (CapacityError) when
// t_i exceeds max_steps evaluations.
std::vector<Rat> telescoping_payments(const AllocFn& alloc_fn,
                                      const AuctionInstance& instance,
                                      std::int64_t max_steps = 1'000'000);

// Truth-telling outcome for one player, reusable across estimator draws:
// the allocation and the player's reported value for their share of it.
struct EstimatorBaseline {
  Allocation alloc;
  Int value;
};

// Single-draw unbiased estimate of the summed-marginal payment: with d drawn
// uniformly from 1..t_i (supplied by the caller),
//   P_hat = v^[t](f_i(v^[t])) - t * [v^[d](f_i(v^[d-1])) - v^[d-1](f_i(v^[d-1]))].
// Averaging over all d gives exactly the telescoping payment. When t_i = 0
// the payment is deterministic: v^[0](f_i(v^[0])). Beyond the baseline
// (recomputed when not supplied) each call costs one rule evaluation and two
// extended value queries.
Rat sample_payment_estimator(const AllocFn& alloc_fn, const AuctionInstance& instance,
                             int player, const Int& d,
                             const EstimatorBaseline* baseline = nullptr);

// Critical-value payments for single-minded bidders: a player served their
// demanded quantity pays the value of the first bid in their family that
// still wins (binary search over the win indicator); everyone else pays 0.
// Raises IntegrityError when the win indicator is detected non-monotone.
std::vector<Rat> single_minded_payments(
    const std::function<Allocation(const std::vector<int>&)>& alloc_fn,
    const SingleMindedInstance& instance);

}  // namespace mua
