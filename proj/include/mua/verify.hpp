#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mua/domain.hpp"
#include "mua/numeric.hpp"

namespace mua {

// A concrete counterexample found by a checker. `witness` holds the indices
// and values needed to replay the violated inequality (layout documented per
// checker); `detail` is a human-readable account of the same facts.
struct ViolationReport {
  enum class Kind {
    SingleCrossing,
    Monotonicity,
    TieBreakMonotonicity,
    Incentive,
    Sketch,
    Ratio,
  };

  Kind kind;
  std::vector<Int> witness;
  std::string detail;
};

// Stable names used in serialized reports.
const char* kind_name(ViolationReport::Kind kind);

// An allocation rule as seen by the checkers: report indices in, quantities
// out. Payment rules additionally take the player being charged.
using RuleFn = std::function<Allocation(const std::vector<Int>&)>;
using PaymentRuleFn = std::function<Rat(const std::vector<Int>&, int)>;

// Eagerly evaluated table of an allocation rule over the whole report box
// prod [0, sizes[i]). Lets several checkers share one set of rule evaluations.
// Refuses (CapacityError) when the box exceeds `cap` profiles.
class ProfileAllocTable {
 public:
  ProfileAllocTable(const RuleFn& rule, const std::vector<Int>& sizes,
                    std::int64_t cap = 1'000'000);

  std::int64_t profiles() const;
  std::int64_t index_of(const std::vector<Int>& profile) const;
  const Allocation& at(const std::vector<Int>& profile) const;

  // Lookup closure over shared storage; safe to outlive this object.
  RuleFn fn() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct BruteForceResult {
  Int welfare;
  Allocation alloc;
};

// Ground-truth welfare maximization by plain enumeration of every feasible
// allocation, ties broken by the tie order (so the result is comparable to the
// solver's allocation-by-allocation, not just by welfare). Refuses when
// (m+1)^n exceeds `cap`.
BruteForceResult brute_force_opt(const std::vector<Valuation>& valuations, int m,
                                 std::int64_t cap = 10'000'000);
BruteForceResult brute_force_opt(const AuctionInstance& instance,
                                 std::int64_t cap = 10'000'000);

// Exhaustive ordering check over all (t < t', s < s'); wraps the domain
// validator's witness. Witness layout: t, t', s, s', v_t(s), v_t(s'),
// v_t'(s), v_t'(s').
std::optional<ViolationReport> check_single_crossing(
    const Domain& domain, std::int64_t max_pairs = 1'000'000);

// For every player, every profile of the others, and every pair t < t' of the
// player's reports: the quantity handed out at t' must be >= the quantity at
// t. Witness layout: player, t, t', quantity(t), quantity(t'), then the full
// profile with the player's slot set to t.
std::optional<ViolationReport> check_allocation_monotone(
    const RuleFn& rule, const std::vector<Domain>& domains, int m,
    std::int64_t cap = 1'000'000);

// Weaker requirement tolerating inversions that are value-ties: whenever a
// higher report t' receives strictly fewer items (a) than a lower report t
// received (a'), the two valuations must agree on the marginal between the two
// quantities: v^[t'](a') - v^[t'](a) = v^[t](a') - v^[t](a). Witness layout:
// player, t, t', a', a, the two marginals, then the full profile with the
// player's slot set to t.
std::optional<ViolationReport> check_tiebreak_monotone(
    const RuleFn& rule, const std::vector<Domain>& domains, int m,
    std::int64_t cap = 1'000'000);

// Exhaustive dominant-strategy check: for every player, profile of others,
// true report t and deviation t', utility under truth (value minus payment,
// exact rationals) must be >= utility under the deviation. Witness layout:
// player, t, t', then the full profile with the player's slot set to t;
// utilities are spelled out in `detail`.
std::optional<ViolationReport> check_incentive_compatible(
    const RuleFn& rule, const PaymentRuleFn& payment,
    const std::vector<Domain>& domains, int m, std::int64_t cap = 1'000'000);

// Three-part audit of a quantity subset K for a family:
//  1. restriction error: v(s) - v|K(s) <= epsilon * v(m) for every member and
//     quantity (witness: t, s, v(s), v|K(s));
//  2. the restricted family, in the same order, still passes the ordering
//     check (witness as in check_single_crossing);
//  3. |K| stays within the size bound implied by epsilon and the family's
//     value bit-length (witness: |K|, bound).
std::optional<ViolationReport> check_sketch_quality(const Domain& domain,
                                                    const std::vector<int>& K,
                                                    const Rat& epsilon,
                                                    std::int64_t cap = 1'000'000);

// Verifies that the full quantity set is incompressible: for every quantity q
// whose removal changes some member's value at all, the removal must cost a
// factor of at least `factor` somewhere (projected * factor <= original).
// Removals that change nothing are allowed (quantities no member is positive
// at). Reports the quantity whose removal is cheap — i.e. a smaller sketch
// exists — with witness layout: q, member, projected value, original value of
// the least-damaged change.
std::optional<ViolationReport> check_no_small_sketch(const Domain& domain,
                                                     const Rat& factor,
                                                     std::int64_t cap = 1'000'000);

// Exact satisfying-assignment count by enumeration; refuses beyond 20
// variables.
std::int64_t count_satisfying(const CnfFormula& formula);

// Minimum over the instances of (rule welfare) / (optimal welfare), as an
// exact rational; instances with optimal welfare 0 contribute 1. The rule maps
// a whole instance to an allocation, which must be feasible.
Rat empirical_ratio(const std::function<Allocation(const AuctionInstance&)>& rule,
                    const std::vector<AuctionInstance>& instances,
                    std::int64_t cap_per_instance = 10'000'000);

}  // namespace mua
