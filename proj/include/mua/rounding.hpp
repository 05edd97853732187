#pragma once

#include <cstdint>
#include <vector>

#include "mua/domain.hpp"
#include "mua/numeric.hpp"

namespace mua {

// A rounding granularity delta = base^exp with integer (possibly negative)
// exponent. Exact; never evaluated in floating point.
struct RoundingParam {
  int base = 2;
  int exp = 0;

  Rat value() const {
    if (exp >= 0) return Rat(pow_int(base, static_cast<unsigned>(exp)));
    return Rat(1, pow_int(base, static_cast<unsigned>(-exp)));
  }
  bool operator==(const RoundingParam&) const = default;
};

// A valuation whose values are all multiples of a common delta, stored as
// integer unit counts: value(s) = units[s] * delta.
struct RoundedValuation {
  int m = 0;
  RoundingParam delta;
  std::vector<std::int64_t> units;  // size m+1, units[0] == 0, non-decreasing

  std::int64_t unit(int s) const { return units.at(static_cast<std::size_t>(s)); }
  Rat value(int s) const { return Rat(unit(s)) * delta.value(); }
};

// Largest power base^p (p ranging over all integers) that is <= bound.
// Requires bound > 0 and base >= 2.
RoundingParam largest_power_leq(int base, const Rat& bound);

// Granularity for the k-minded scheme: base 4kn, bound eps*v_max/(3 n^2 k^2).
// Requires v_max > 0 (callers short-circuit the all-zero case).
RoundingParam select_delta(const Rat& epsilon, int n, int k, const Int& v_max);

// Floors every marginal v(s) - v(s-1) to a multiple of delta and re-sums.
RoundedValuation marginal_round(const Valuation& v, const RoundingParam& delta);

// Adds the high-bidder bonus: players whose reported grand-bundle value passes
// the threshold v_i(m)*eps >= 3*delta*n^2*k^2 (compared exactly) gain
// 2*delta*k*n per step-set quantity at or below their allocation. k is the
// largest step-set size. Non-passing players are returned unchanged.
std::vector<RoundedValuation> apply_rewards(
    const std::vector<RoundedValuation>& rounded,
    const std::vector<Valuation>& originals, const RoundingParam& delta,
    const Rat& epsilon, int n, int k,
    const std::vector<KMindedStructure>& step_sets);

// A quantity subset K (always containing 0) such that restricting any family
// member to K loses at most epsilon * v(m) at every quantity.
struct Sketch {
  std::vector<int> quantities;  // ascending, starts with 0
  Rat epsilon;
  std::int64_t declared_bound = 0;  // asserted upper bound on quantities.size()

  KMindedStructure steps() const {
    KMindedStructure ks;
    for (int q : quantities)
      if (q != 0) ks.steps.push_back(q);
    return ks;
  }
};

// Builds a sketch by walking anchor valuations whose grand-bundle values grow
// by at least (1 + eps/2) per anchor, and, per anchor, quantities whose values
// grow by at least the same factor. Both walks use binary search (grand-bundle
// values are non-decreasing along the order, values non-decreasing in s).
// Report-independent: depends only on the family. All-zero family -> {0}.
Sketch build_sketch(const Domain& domain, const Rat& epsilon);

// Restriction to a quantity set: value at s becomes the value at the largest
// member of K not exceeding s. K must contain 0.
Valuation project(const Valuation& v, const std::vector<int>& K);

// Lazily projected family: member t answers project(member t of d, K).
Domain project_domain(const Domain& d, const std::vector<int>& K);

}  // namespace mua
