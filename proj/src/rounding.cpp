#include "mua/rounding.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <stdexcept>

namespace mua {

RoundingParam largest_power_leq(int base, const Rat& bound) {
  if (base < 2) throw std::invalid_argument("largest_power_leq: base must be >= 2");
  if (bound <= 0) throw std::invalid_argument("largest_power_leq: bound must be positive");
  RoundingParam p{base, 0};
  Rat val = 1;
  if (val <= bound) {
    while (val * base <= bound) {
      val *= base;
      ++p.exp;
    }
  } else {
    while (val > bound) {
      val /= base;
      --p.exp;
    }
  }
  return p;
}

RoundingParam select_delta(const Rat& epsilon, int n, int k, const Int& v_max) {
  if (n < 1 || k < 1) throw std::invalid_argument("select_delta: n and k must be positive");
  if (epsilon <= 0) throw std::invalid_argument("select_delta: epsilon must be positive");
  if (v_max <= 0) throw std::invalid_argument("select_delta: v_max must be positive");
  const int base = 4 * k * n;
  const Rat bound = epsilon * Rat(v_max) / Rat(3 * static_cast<std::int64_t>(n) * n * k * k);
  return largest_power_leq(base, bound);
}

RoundedValuation marginal_round(const Valuation& v, const RoundingParam& delta) {
  if (auto why = v.invalid_reason())
    throw std::invalid_argument("marginal_round: " + *why);
  RoundedValuation out;
  out.m = v.m;
  out.delta = delta;
  out.units.resize(static_cast<std::size_t>(v.m) + 1);
  out.units[0] = 0;
  Int acc = 0;
  // floor(x / delta) for delta = base^exp: divide by the power for exp >= 0,
  // multiply by it for exp < 0 (integers are exact multiples then).
  const Int scale = pow_int(delta.base, static_cast<unsigned>(std::abs(delta.exp)));
  for (int s = 1; s <= v.m; ++s) {
    Int marginal = v.value(s) - v.value(s - 1);
    Int unit_inc = delta.exp >= 0 ? floor_div(marginal, scale) : marginal * scale;
    acc += unit_inc;
    out.units[static_cast<std::size_t>(s)] = to_int64_checked(acc, "marginal_round units");
  }
  return out;
}

std::vector<RoundedValuation> apply_rewards(
    const std::vector<RoundedValuation>& rounded,
    const std::vector<Valuation>& originals, const RoundingParam& delta,
    const Rat& epsilon, int n, int k,
    const std::vector<KMindedStructure>& step_sets) {
  if (rounded.size() != originals.size() || rounded.size() != step_sets.size())
    throw std::invalid_argument("apply_rewards: per-player inputs must align");
  const Rat threshold = Rat(3 * static_cast<std::int64_t>(n) * n * k * k) * delta.value();
  const std::int64_t bonus_units = 2 * static_cast<std::int64_t>(k) * n;
  std::vector<RoundedValuation> out = rounded;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Int& grand = originals[i].value(originals[i].m);
    if (Rat(grand) * epsilon < threshold) continue;  // below the reward bar
    auto& u = out[i];
    std::size_t step_idx = 0;
    std::int64_t steps_below = 0;
    const auto& steps = step_sets[i].steps;
    for (int s = 1; s <= u.m; ++s) {
      while (step_idx < steps.size() && steps[step_idx] <= s) {
        ++step_idx;
        ++steps_below;
      }
      u.units[static_cast<std::size_t>(s)] += steps_below * bonus_units;
    }
  }
  return out;
}

namespace {

// Smallest s in (lo, m] with value(t, s) >= target, assuming monotone values;
// m+1 when none.
int lower_bound_quantity(const Domain& d, const Int& t, int lo, const Int& target) {
  int hi = d.m();
  if (d.query(t, hi) < target) return hi + 1;
  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    if (d.query(t, mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Smallest index in (lo, size) whose grand-bundle value reaches target;
// size when none. Grand-bundle values are non-decreasing along the order.
Int lower_bound_anchor(const Domain& d, Int lo, const Int& target) {
  Int hi = d.size() - 1;
  if (d.query(hi, d.m()) < target) return d.size();
  while (lo + 1 < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (d.query(mid, d.m()) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

Sketch build_sketch(const Domain& domain, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("build_sketch: epsilon must be positive");
  Sketch sk;
  sk.epsilon = epsilon;
  sk.quantities = {0};

  const int b = domain.value_bits();
  // Number of (1 + eps/2) growth steps needed to cover the value range, used
  // for the declared size bound (anchors + 1) * (quantities per anchor + 1).
  const Rat growth = 1 + epsilon / 2;
  std::int64_t L = 0;
  {
    Rat val = 1;
    const Int range = Int(1) << static_cast<unsigned>(b);
    while (val < range) {
      val *= growth;
      ++L;
    }
  }
  sk.declared_bound = (L + 1) * (L + 1) + 1;

  if (domain.size() == 0) return sk;

  const int m = domain.m();
  // First anchor: the first member with a non-zero grand bundle.
  Int anchor = lower_bound_anchor(domain, Int(-1), Int(1));
  while (anchor < domain.size()) {
    // First positive quantity, then quantities growing by >= (1 + eps/2).
    int s = lower_bound_quantity(domain, anchor, 0, Int(1));
    while (s <= m) {
      sk.quantities.push_back(s);
      if (s == m) break;
      Rat target = growth * Rat(domain.query(anchor, s));
      // ceil(target) as an integer value threshold
      Int t_ceil = -floor_div(-numerator(target), denominator(target));
      s = lower_bound_quantity(domain, anchor, s, t_ceil);
    }
    // Next anchor: first member whose grand bundle grows by >= (1 + eps/2).
    Rat target = growth * Rat(domain.query(anchor, m));
    Int t_ceil = -floor_div(-numerator(target), denominator(target));
    anchor = lower_bound_anchor(domain, anchor, t_ceil);
  }

  std::sort(sk.quantities.begin(), sk.quantities.end());
  sk.quantities.erase(std::unique(sk.quantities.begin(), sk.quantities.end()),
                      sk.quantities.end());
  if (static_cast<std::int64_t>(sk.quantities.size()) > sk.declared_bound)
    throw IntegrityError("build_sketch: size bound exceeded");
  return sk;
}

Valuation project(const Valuation& v, const std::vector<int>& K) {
  if (K.empty() || K.front() != 0)
    throw std::invalid_argument("project: K must contain 0 first");
  Valuation out;
  out.m = v.m;
  out.values.resize(static_cast<std::size_t>(v.m) + 1);
  std::size_t idx = 0;
  int current = 0;
  for (int s = 0; s <= v.m; ++s) {
    while (idx + 1 < K.size() && K[idx + 1] <= s) {
      ++idx;
      current = K[idx];
    }
    out.values[static_cast<std::size_t>(s)] = v.value(current);
  }
  return out;
}

Domain project_domain(const Domain& d, const std::vector<int>& K) {
  if (K.empty() || K.front() != 0)
    throw std::invalid_argument("project_domain: K must contain 0 first");
  auto shared = std::make_shared<std::vector<int>>(K);
  Domain inner = d;
  return Domain::from_fn(d.m(), d.size(), [inner, shared](const Int& t, int s) {
    auto it = std::upper_bound(shared->begin(), shared->end(), s);
    int q = *(it - 1);
    return inner.query(t, q);
  });
}

}  // namespace mua
