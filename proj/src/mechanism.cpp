#include "mua/mechanism.hpp"

#include <algorithm>
#include <stdexcept>

#include "mua/verify.hpp"

namespace mua {

namespace {

// Shared core of the step-quantity scheme, after reported valuations have
// been materialized (and, for the general scheme, projected).
MechanismResult step_scheme_core(int m, const std::vector<Valuation>& reported,
                                 const std::vector<KMindedStructure>& step_sets,
                                 const Rat& epsilon) {
  const int n = static_cast<int>(reported.size());
  if (static_cast<int>(step_sets.size()) != n)
    throw std::invalid_argument("step scheme: one step set per player required");
  for (int i = 0; i < n; ++i) {
    if (auto why = step_sets[static_cast<std::size_t>(i)].invalid_reason(m))
      throw std::invalid_argument("step scheme: " + *why);
    // The reported valuation may only change value at its step quantities.
    const auto& v = reported[static_cast<std::size_t>(i)];
    const auto& steps = step_sets[static_cast<std::size_t>(i)].steps;
    std::size_t idx = 0;
    for (int s = 1; s <= m; ++s) {
      bool on_step = idx < steps.size() && steps[idx] == s;
      if (on_step) ++idx;
      if (!on_step && v.value(s) != v.value(s - 1))
        throw std::invalid_argument(
            "step scheme: reported valuation changes off its step set");
    }
  }

  int k = 1;
  Int v_max = 0;
  for (int i = 0; i < n; ++i) {
    k = std::max(k, step_sets[static_cast<std::size_t>(i)].k());
    v_max = std::max(v_max, reported[static_cast<std::size_t>(i)].value(m));
  }

  MechanismResult result;
  if (v_max == 0) {
    result.allocation.assign(static_cast<std::size_t>(n), 0);
    result.diagnostics.delta = RoundingParam{4 * k * n, 0};
    result.diagnostics.rewarded.assign(static_cast<std::size_t>(n), false);
    return result;
  }

  const RoundingParam delta = select_delta(epsilon, n, k, v_max);
  std::vector<RoundedValuation> rounded;
  rounded.reserve(static_cast<std::size_t>(n));
  for (const auto& v : reported) rounded.push_back(marginal_round(v, delta));
  std::vector<RoundedValuation> us =
      apply_rewards(rounded, reported, delta, epsilon, n, k, step_sets);

  std::vector<std::vector<int>> menus;
  menus.reserve(static_cast<std::size_t>(n));
  for (const auto& ks : step_sets) menus.push_back(ks.steps);

  SolveResult solved = max_welfare_dp(us, m, menus);
  result.allocation = std::move(solved.alloc);
  for (int i = 0; i < n; ++i)
    result.welfare += reported[static_cast<std::size_t>(i)].value(
        result.allocation[static_cast<std::size_t>(i)]);
  result.diagnostics.delta = delta;
  const Rat reward_bar = Rat(3 * static_cast<std::int64_t>(n) * n * k * k) * delta.value();
  result.diagnostics.rewarded.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    result.diagnostics.rewarded[static_cast<std::size_t>(i)] =
        Rat(reported[static_cast<std::size_t>(i)].value(m)) * epsilon >= reward_bar;
  return result;
}

std::vector<Valuation> materialize_reports(const AuctionInstance& instance) {
  if (auto why = instance.invalid_reason())
    throw std::invalid_argument("mechanism: " + *why);
  std::vector<Valuation> out;
  out.reserve(instance.domains.size());
  for (int i = 0; i < instance.n(); ++i) out.push_back(instance.reported_valuation(i));
  return out;
}

}  // namespace

MechanismResult fptas_k_minded(const AuctionInstance& instance,
                               const std::vector<KMindedStructure>& step_sets,
                               const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("fptas_k_minded: epsilon must be positive");
  return step_scheme_core(instance.m, materialize_reports(instance), step_sets, epsilon);
}

MechanismResult fptas_general_with_sketches(const AuctionInstance& instance,
                                            const std::vector<Sketch>& sketches,
                                            const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("fptas_general: epsilon must be positive");
  const int n = instance.n();
  if (static_cast<int>(sketches.size()) != n)
    throw std::invalid_argument("fptas_general: one sketch per player required");
  std::vector<Valuation> reported = materialize_reports(instance);

  std::vector<Valuation> projected;
  std::vector<KMindedStructure> step_sets;
  projected.reserve(static_cast<std::size_t>(n));
  step_sets.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& sk = sketches[static_cast<std::size_t>(i)];
    projected.push_back(project(reported[static_cast<std::size_t>(i)], sk.quantities));
    step_sets.push_back(sk.steps());
  }

  MechanismResult result = step_scheme_core(instance.m, projected, step_sets, epsilon / 2);
  // Allocations already land on sketch quantities; rounding down is a no-op
  // kept as a guard.
  for (int i = 0; i < n; ++i) {
    const auto& qs = sketches[static_cast<std::size_t>(i)].quantities;
    auto it = std::upper_bound(qs.begin(), qs.end(),
                               result.allocation[static_cast<std::size_t>(i)]);
    result.allocation[static_cast<std::size_t>(i)] = *(it - 1);
  }
  result.welfare = 0;
  for (int i = 0; i < n; ++i)
    result.welfare += reported[static_cast<std::size_t>(i)].value(
        result.allocation[static_cast<std::size_t>(i)]);
  result.diagnostics.sketch_sizes.clear();
  for (const auto& sk : sketches)
    result.diagnostics.sketch_sizes.push_back(static_cast<int>(sk.quantities.size()));
  return result;
}

MechanismResult fptas_general(const AuctionInstance& instance, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("fptas_general: epsilon must be positive");
  const int n = instance.n();
  std::vector<Sketch> sketches;
  sketches.reserve(static_cast<std::size_t>(n));
  const Rat sketch_eps = epsilon / (2 * n);
  for (int i = 0; i < n; ++i)
    sketches.push_back(build_sketch(instance.domains[static_cast<std::size_t>(i)], sketch_eps));
  return fptas_general_with_sketches(instance, sketches, epsilon);
}

MechanismResult fptas_single_minded(const SingleMindedInstance& instance,
                                    const Rat& epsilon) {
  if (epsilon <= 0)
    throw std::invalid_argument("fptas_single_minded: epsilon must be positive");
  const int n = instance.n();
  if (n == 0) throw std::invalid_argument("fptas_single_minded: no players");
  std::vector<SingleMindedBid> bids;
  bids.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& b = instance.reported_bid(i);
    if (b.quantity < 1 || b.quantity > instance.m)
      throw std::invalid_argument("fptas_single_minded: bid quantity out of range");
    if (b.value < 0) throw std::invalid_argument("fptas_single_minded: negative bid");
    bids.push_back(b);
  }

  Int v_max = 0;
  for (const auto& b : bids) v_max = std::max(v_max, b.value);

  MechanismResult result;
  if (v_max == 0) {
    result.allocation.assign(static_cast<std::size_t>(n), 0);
    result.diagnostics.delta = RoundingParam{4, 0};
    result.diagnostics.rewarded.assign(static_cast<std::size_t>(n), false);
    return result;
  }

  const RoundingParam delta = largest_power_leq(4, epsilon * Rat(v_max) / Rat(3 * n));

  // Floor each bid value to the granularity; boost the single highest bidder
  // (lowest index on ties) by 2n granularity units.
  int top = 0;
  for (int i = 1; i < n; ++i)
    if (bids[static_cast<std::size_t>(i)].value > bids[static_cast<std::size_t>(top)].value)
      top = i;

  std::vector<RoundedValuation> us;
  std::vector<std::vector<int>> menus;
  us.reserve(static_cast<std::size_t>(n));
  menus.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& b = bids[static_cast<std::size_t>(i)];
    Int units = delta.exp >= 0
                    ? floor_div(b.value, pow_int(delta.base, static_cast<unsigned>(delta.exp)))
                    : b.value * pow_int(delta.base, static_cast<unsigned>(-delta.exp));
    if (i == top) units += 2 * n;
    RoundedValuation u;
    u.m = instance.m;
    u.delta = delta;
    u.units.assign(static_cast<std::size_t>(instance.m) + 1, 0);
    std::int64_t units64 = to_int64_checked(units, "single-minded units");
    for (int s = b.quantity; s <= instance.m; ++s)
      u.units[static_cast<std::size_t>(s)] = units64;
    us.push_back(std::move(u));
    menus.push_back({0, b.quantity});
  }

  SolveResult solved = max_welfare_dp(us, instance.m, menus);
  result.allocation = std::move(solved.alloc);
  for (int i = 0; i < n; ++i)
    if (result.allocation[static_cast<std::size_t>(i)] >=
        bids[static_cast<std::size_t>(i)].quantity)
      result.welfare += bids[static_cast<std::size_t>(i)].value;
  result.diagnostics.delta = delta;
  result.diagnostics.rewarded.assign(static_cast<std::size_t>(n), false);
  result.diagnostics.rewarded[static_cast<std::size_t>(top)] = true;
  return result;
}

MechanismResult vcg_exact(const AuctionInstance& instance) {
  std::vector<Valuation> reported = materialize_reports(instance);
  const int n = instance.n();
  const int m = instance.m;
  const RoundingParam unit{2, 0};

  auto as_units = [&](const Valuation& v) {
    RoundedValuation u;
    u.m = m;
    u.delta = unit;
    u.units.resize(static_cast<std::size_t>(m) + 1);
    for (int s = 0; s <= m; ++s)
      u.units[static_cast<std::size_t>(s)] =
          to_int64_checked(v.value(s), "vcg_exact values");
    return u;
  };

  std::vector<RoundedValuation> us;
  us.reserve(static_cast<std::size_t>(n));
  for (const auto& v : reported) us.push_back(as_units(v));

  SolveResult solved = max_welfare_dp(us, m);
  MechanismResult result;
  result.allocation = solved.alloc;
  result.welfare = Int(solved.welfare_units);
  result.diagnostics.delta = unit;

  // Externality payments: what the others could have had without player i,
  // minus what they get now.
  std::vector<Rat> payments(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    Int others_now = 0;
    for (int j = 0; j < n; ++j)
      if (j != i)
        others_now += reported[static_cast<std::size_t>(j)].value(
            solved.alloc[static_cast<std::size_t>(j)]);
    Int others_alone = 0;
    if (n > 1) {
      std::vector<RoundedValuation> rest;
      rest.reserve(static_cast<std::size_t>(n) - 1);
      for (int j = 0; j < n; ++j)
        if (j != i) rest.push_back(us[static_cast<std::size_t>(j)]);
      others_alone = Int(max_welfare_dp(rest, m).welfare_units);
    }
    payments[static_cast<std::size_t>(i)] = Rat(others_alone - others_now);
  }
  result.payments = std::move(payments);
  return result;
}

SeparationInstance make_separation_instance(int n_bits, WitnessPredicate witness) {
  SeparationInstance inst;
  inst.n_bits = n_bits;
  inst.m = 1 << n_bits;
  if (!witness) witness = default_witness(inst.m);
  inst.witness = witness;
  auto domains = gen_separation_domains(n_bits, witness);
  inst.first = std::move(domains.first);
  inst.second = std::move(domains.second);
  return inst;
}

int separation_score(const SeparationInstance& inst, int a, int b,
                     const Allocation& alloc) {
  if (alloc.size() != 2)
    throw std::invalid_argument("separation_score: two-player allocations only");
  const int m = inst.m;
  const int s = alloc[0];
  const int r = alloc[1];
  if (a > b) return (s == m && r == 0) ? 2 : 0;
  if (b > a) return (s == 1 && r == m - 1) ? 2 : 0;
  if (s + r == m && inst.witness(a, s)) return 2;
  if (s == 0 && r == m) return 1;
  return 0;
}

Allocation separation_greedy(const SeparationInstance& inst, int a, int b) {
  const int m = inst.m;
  if (a > b) return {m, 0};
  if (b > a) return {1, m - 1};
  return {0, m};
}

PaymentHardnessOutcome payment_hardness_check(int num_vars, const CnfFormula& formula) {
  PaymentHardnessRule rule = gen_payment_hardness_instance(num_vars, formula);
  const int m = rule.m;

  // Summed-quantity expression: the rule's quantity at the top report, scaled
  // by m, minus one sample per unit interval (taken at the midpoint, where
  // the rule's rational-argument definition is unambiguous).
  Rat lhs = Rat(m) * Rat(rule.alloc(Rat(m)).at(0));
  for (int z = 0; z < m; ++z)
    lhs -= Rat(rule.alloc(Rat(2 * z + 1, 2)).at(0));

  const std::int64_t ell = count_satisfying(formula);
  PaymentHardnessOutcome out;
  out.lhs = lhs;
  out.rhs = Rat(static_cast<std::int64_t>(m) * m + m, 2) - Rat(ell);
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace mua
