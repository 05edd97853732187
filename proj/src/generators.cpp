#include "mua/generators.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>

namespace mua {

namespace {

// Bounded draw that depends only on the engine state (avoids the
// implementation-defined behavior of std::uniform_int_distribution).
std::int64_t draw(std::mt19937_64& rng, std::int64_t upper_inclusive) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(upper_inclusive + 1));
}

Domain random_family(std::uint64_t seed, int size, int m,
                     const std::vector<int>& marginal_quantities,
                     std::int64_t max_marginal) {
  if (size <= 0) throw std::invalid_argument("random family: size must be positive");
  if (m < 0) throw std::invalid_argument("random family: m must be non-negative");
  if (max_marginal < 0)
    throw std::invalid_argument("random family: max_marginal must be non-negative");
  std::mt19937_64 rng(seed);
  // marginals[t][s]: sorted per quantity so marginals dominate along the order.
  std::vector<std::vector<std::int64_t>> marginals(
      static_cast<std::size_t>(size),
      std::vector<std::int64_t>(static_cast<std::size_t>(m) + 1, 0));
  for (int s : marginal_quantities) {
    std::vector<std::int64_t> column(static_cast<std::size_t>(size));
    for (auto& x : column) x = draw(rng, max_marginal);
    std::sort(column.begin(), column.end());
    for (int t = 0; t < size; ++t)
      marginals[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] =
          column[static_cast<std::size_t>(t)];
  }
  std::vector<Valuation> vals(static_cast<std::size_t>(size));
  for (int t = 0; t < size; ++t) {
    auto& v = vals[static_cast<std::size_t>(t)];
    v.m = m;
    v.values.resize(static_cast<std::size_t>(m) + 1);
    Int acc = 0;
    v.values[0] = 0;
    for (int s = 1; s <= m; ++s) {
      acc += marginals[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
      v.values[static_cast<std::size_t>(s)] = acc;
    }
  }
  return Domain::from_valuations(m, std::move(vals));
}

}  // namespace

Domain gen_random_single_crossing(std::uint64_t seed, int size, int m,
                                  std::int64_t max_marginal) {
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int s = 1; s <= m; ++s) all[static_cast<std::size_t>(s) - 1] = s;
  return random_family(seed, size, m, all, max_marginal);
}

Domain gen_random_k_minded(std::uint64_t seed, int size, int m,
                           const KMindedStructure& steps,
                           std::int64_t max_marginal) {
  if (auto why = steps.invalid_reason(m))
    throw std::invalid_argument("gen_random_k_minded: " + *why);
  return random_family(seed, size, m, steps.steps, max_marginal);
}

WitnessPredicate default_witness(int m) {
  return [m](int x, int s) {
    if (x >= 2) return s == x;
    if (x == 1) return s == m - 1;
    return s == m;
  };
}

std::pair<Domain, Domain> gen_separation_domains(int n_bits,
                                                 WitnessPredicate witness) {
  if (n_bits < 2 || n_bits > 20)
    throw std::invalid_argument("gen_separation_domains: n_bits must be in 2..20");
  const int m = 1 << n_bits;
  if (!witness) witness = default_witness(m);
  const Int base = pow_int(10, static_cast<unsigned>(n_bits));
  Domain first = Domain::from_fn(m, Int(m), [base, witness](const Int& t, int s) {
    const int x = t.convert_to<int>();
    Int v = base + 10 * x + Int(4) * s * x;
    if (s > 1 && witness(x, s)) v += 1;
    return v;
  });
  Domain second = Domain::from_fn(m, Int(m), [](const Int& t, int s) {
    return Int(4) * s * t.convert_to<int>();
  });
  return {std::move(first), std::move(second)};
}

std::pair<Domain, Domain> gen_sat_twoplayer_domains(int num_vars) {
  if (num_vars < 1)
    throw std::invalid_argument("gen_sat_twoplayer_domains: num_vars must be positive");
  if (num_vars > 4)
    throw CapacityError(
        "gen_sat_twoplayer_domains: num_vars above 4 makes the formula family "
        "unaddressable");
  const int m = 1 << num_vars;
  const std::int64_t universe = clause_universe_size(num_vars);
  // Per-clause satisfaction masks over the 2^num_vars assignments; a formula's
  // mask is the AND over its clauses.
  auto clause_masks = std::make_shared<std::vector<std::uint64_t>>();
  clause_masks->reserve(static_cast<std::size_t>(universe));
  for (std::int64_t r = 0; r < universe; ++r) {
    CnfFormula one{num_vars, {clause_unrank(r, num_vars)}};
    std::uint64_t mask = 0;
    for (int a = 0; a < m; ++a)
      if (satisfies(one, static_cast<std::uint64_t>(a))) mask |= (1ull << a);
    clause_masks->push_back(mask);
  }
  const std::uint64_t full_mask = (m == 64) ? ~0ull : ((1ull << m) - 1);
  // The same ordinal is queried many times in a row; remember the last mask.
  struct Cache {
    Int ordinal = -1;
    std::uint64_t mask = 0;
  };
  auto cache = std::make_shared<Cache>();
  auto sat_mask = [clause_masks, cache, universe, full_mask](const Int& t) {
    if (cache->ordinal == t) return cache->mask;
    std::uint64_t mask = full_mask;
    for (std::int64_t r = 0; r < universe; ++r)
      if (boost::multiprecision::bit_test(t, static_cast<unsigned>(r)))
        mask &= (*clause_masks)[static_cast<std::size_t>(r)];
    cache->ordinal = t;
    cache->mask = mask;
    return mask;
  };
  Int size = Int(1) << static_cast<unsigned>(universe);
  Domain first = Domain::from_fn(m, size, [m, sat_mask](const Int& t, int s) {
    Int v = Int(4) * s * t;
    const int assignment = s % m;
    if ((sat_mask(t) >> assignment) & 1ull) v += 1;
    return v;
  });
  Domain second = Domain::from_fn(m, size, [](const Int& t, int s) {
    return Int(4) * s * t;
  });
  return {std::move(first), std::move(second)};
}

Allocation PaymentHardnessRule::alloc(const Rat& theta) const {
  if (theta < 0 || theta > m)
    throw std::out_of_range("PaymentHardnessRule::alloc: theta outside [0, m]");
  const Int fl = floor_div(numerator(theta), denominator(theta));
  const int z = fl.convert_to<int>();
  int quantity = z;
  if (theta > 0 && theta < m &&
      satisfies(formula, static_cast<std::uint64_t>(z % m)))
    quantity = z + 1;
  return Allocation{quantity, 0};
}

PaymentHardnessRule gen_payment_hardness_instance(int num_vars,
                                                  const CnfFormula& formula) {
  if (num_vars < 1 || num_vars > 20)
    throw std::invalid_argument(
        "gen_payment_hardness_instance: num_vars must be in 1..20");
  if (formula.num_vars != num_vars)
    throw std::invalid_argument(
        "gen_payment_hardness_instance: formula variable count mismatch");
  PaymentHardnessRule rule;
  rule.m = 1 << num_vars;
  rule.formula = formula;
  return rule;
}

Domain gen_scalar_domain(int m, int size) {
  if (m < 1 || size < 1)
    throw std::invalid_argument("gen_scalar_domain: m and size must be positive");
  return Domain::from_fn(m, Int(size),
                         [](const Int& t, int s) { return t * s; });
}

Domain gen_nosketch_domain(int m) {
  if (m < 4 || (m & (m - 1)) != 0)
    throw std::invalid_argument("gen_nosketch_domain: m must be a power of two >= 4");
  int log_m = 0;
  while ((1 << (log_m + 1)) <= m) ++log_m;
  const int size = m / log_m;  // floor
  std::vector<Valuation> vals(static_cast<std::size_t>(size));
  for (int x = 1; x <= size; ++x) {
    auto& v = vals[static_cast<std::size_t>(x - 1)];
    v.m = m;
    v.values.assign(static_cast<std::size_t>(m) + 1, Int(0));
    const int start = m - x * log_m;
    const int end = m - (x - 1) * log_m;
    for (int s = start + 1; s <= end; ++s)
      v.values[static_cast<std::size_t>(s)] = Int(1) << static_cast<unsigned>(s - start);
    if (x >= 2) {
      const auto& prev = vals[static_cast<std::size_t>(x - 2)];
      for (int s = end + 1; s <= m; ++s)
        v.values[static_cast<std::size_t>(s)] =
            v.values[static_cast<std::size_t>(end)] + prev.values[static_cast<std::size_t>(s)] -
            prev.values[static_cast<std::size_t>(end)];
    }
  }
  return Domain::from_valuations(m, std::move(vals));
}

}  // namespace mua
