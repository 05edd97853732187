#include "mua/verify.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mua/rounding.hpp"
#include "mua/solver.hpp"

namespace mua {

namespace {

std::string int_str(const Int& v) { return v.str(); }

// Enumerates the report box prod [0, sizes[i]) with axis 0 moving fastest.
// The visitor may temporarily rewrite entries but must restore them before
// returning; returning false stops the walk.
void for_each_profile(const std::vector<std::int64_t>& sizes,
                      const std::function<bool(std::vector<Int>&)>& visit) {
  const std::size_t n = sizes.size();
  std::vector<Int> profile(n, Int(0));
  std::vector<std::int64_t> counters(n, 0);
  for (;;) {
    if (!visit(profile)) return;
    std::size_t axis = 0;
    while (axis < n) {
      if (++counters[axis] < sizes[axis]) {
        profile[axis] = counters[axis];
        break;
      }
      counters[axis] = 0;
      profile[axis] = 0;
      ++axis;
    }
    if (axis == n) return;
  }
}

std::vector<std::int64_t> enumerable_sizes(const std::vector<Domain>& domains,
                                           std::int64_t cap, const char* who) {
  std::vector<std::int64_t> sizes;
  sizes.reserve(domains.size());
  Int total = 1;
  for (const auto& d : domains) {
    sizes.push_back(d.size_int(who));
    total *= d.size();
  }
  if (total > cap)
    throw CapacityError(std::string(who) + ": " + int_str(total) +
                        " profiles exceed cap " + std::to_string(cap));
  return sizes;
}

int quantity_of(const Allocation& a, int player, const char* who) {
  if (player < 0 || static_cast<std::size_t>(player) >= a.size())
    throw IntegrityError(std::string(who) + ": rule returned a short allocation");
  return a[static_cast<std::size_t>(player)];
}

ViolationReport wrap_ordering_violation(const SingleCrossingViolation& v,
                                        ViolationReport::Kind kind,
                                        const std::string& prefix) {
  ViolationReport report;
  report.kind = kind;
  report.witness = {v.t_lo,      v.t_hi,      Int(v.s_lo),  Int(v.s_hi),
                    v.lo_at_slo, v.lo_at_shi, v.hi_at_slo, v.hi_at_shi};
  std::ostringstream os;
  os << prefix << "members " << int_str(v.t_lo) << " < " << int_str(v.t_hi)
     << " at quantities " << v.s_lo << " < " << v.s_hi << ": higher member gains "
     << int_str(v.hi_at_shi - v.hi_at_slo) << ", lower member gains "
     << int_str(v.lo_at_shi - v.lo_at_slo);
  report.detail = os.str();
  return report;
}

}  // namespace

const char* kind_name(ViolationReport::Kind kind) {
  switch (kind) {
    case ViolationReport::Kind::SingleCrossing: return "single-crossing";
    case ViolationReport::Kind::Monotonicity: return "monotonicity";
    case ViolationReport::Kind::TieBreakMonotonicity: return "tie-break-monotonicity";
    case ViolationReport::Kind::Incentive: return "incentive";
    case ViolationReport::Kind::Sketch: return "sketch";
    case ViolationReport::Kind::Ratio: return "ratio";
  }
  return "unknown";
}

struct ProfileAllocTable::Impl {
  std::vector<std::int64_t> sizes;
  std::vector<std::int64_t> strides;
  std::int64_t total = 0;
  std::vector<Allocation> table;

  std::int64_t index_of(const std::vector<Int>& profile) const {
    if (profile.size() != sizes.size())
      throw std::invalid_argument("profile table: wrong profile length");
    std::int64_t index = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (profile[i] < 0 || profile[i] >= sizes[i])
        throw std::invalid_argument("profile table: report index out of range");
      index += profile[i].convert_to<std::int64_t>() * strides[i];
    }
    return index;
  }
};

ProfileAllocTable::ProfileAllocTable(const RuleFn& rule,
                                     const std::vector<Int>& sizes,
                                     std::int64_t cap)
    : impl_(std::make_shared<Impl>()) {
  Int total = 1;
  for (const Int& s : sizes) {
    if (s < 1) throw std::invalid_argument("profile table: empty report range");
    total *= s;
  }
  if (total > cap)
    throw CapacityError("profile table: " + int_str(total) +
                        " profiles exceed cap " + std::to_string(cap));
  impl_->total = total.convert_to<std::int64_t>();
  impl_->sizes.reserve(sizes.size());
  for (const Int& s : sizes) impl_->sizes.push_back(s.convert_to<std::int64_t>());
  impl_->strides.resize(sizes.size());
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    impl_->strides[i] = stride;
    stride *= impl_->sizes[i];
  }
  impl_->table.resize(static_cast<std::size_t>(impl_->total));
  auto* impl = impl_.get();
  for_each_profile(impl->sizes, [&](std::vector<Int>& profile) {
    impl->table[static_cast<std::size_t>(impl->index_of(profile))] = rule(profile);
    return true;
  });
}

std::int64_t ProfileAllocTable::profiles() const { return impl_->total; }

std::int64_t ProfileAllocTable::index_of(const std::vector<Int>& profile) const {
  return impl_->index_of(profile);
}

const Allocation& ProfileAllocTable::at(const std::vector<Int>& profile) const {
  return impl_->table[static_cast<std::size_t>(impl_->index_of(profile))];
}

RuleFn ProfileAllocTable::fn() const {
  auto impl = impl_;
  return [impl](const std::vector<Int>& profile) {
    return impl->table[static_cast<std::size_t>(impl->index_of(profile))];
  };
}

namespace {

void brute_force_search(const std::vector<Valuation>& vals, std::size_t i,
                        int remaining, Allocation& cur, const Int& welfare,
                        BruteForceResult& best, bool& any) {
  if (i == vals.size()) {
    if (!any || welfare > best.welfare ||
        (welfare == best.welfare && tie_compare(cur, best.alloc) > 0)) {
      best.welfare = welfare;
      best.alloc = cur;
      any = true;
    }
    return;
  }
  for (int s = 0; s <= remaining; ++s) {
    cur[i] = s;
    brute_force_search(vals, i + 1, remaining - s, cur, welfare + vals[i].value(s),
                       best, any);
  }
  cur[i] = 0;
}

}  // namespace

BruteForceResult brute_force_opt(const std::vector<Valuation>& valuations, int m,
                                 std::int64_t cap) {
  const std::size_t n = valuations.size();
  if (n == 0) throw std::invalid_argument("brute_force_opt: no players");
  for (const auto& v : valuations) {
    if (v.m != m) throw std::invalid_argument("brute_force_opt: item count mismatch");
    if (auto why = v.invalid_reason())
      throw std::invalid_argument("brute_force_opt: " + *why);
  }
  Int combos = pow_int(m + 1, static_cast<unsigned>(n));
  if (combos > cap)
    throw CapacityError("brute_force_opt: " + int_str(combos) +
                        " allocations exceed cap " + std::to_string(cap));
  BruteForceResult best;
  best.welfare = 0;
  bool any = false;
  Allocation cur(n, 0);
  brute_force_search(valuations, 0, m, cur, Int(0), best, any);
  return best;
}

BruteForceResult brute_force_opt(const AuctionInstance& instance,
                                 std::int64_t cap) {
  if (auto why = instance.invalid_reason())
    throw std::invalid_argument("brute_force_opt: " + *why);
  std::vector<Valuation> vals;
  vals.reserve(instance.domains.size());
  for (int i = 0; i < instance.n(); ++i) vals.push_back(instance.reported_valuation(i));
  return brute_force_opt(vals, instance.m, cap);
}

std::optional<ViolationReport> check_single_crossing(const Domain& domain,
                                                     std::int64_t max_pairs) {
  auto violation = validate_domain(domain, max_pairs);
  if (!violation) return std::nullopt;
  return wrap_ordering_violation(*violation, ViolationReport::Kind::SingleCrossing,
                                 "");
}

std::optional<ViolationReport> check_allocation_monotone(
    const RuleFn& rule, const std::vector<Domain>& domains, int m,
    std::int64_t cap) {
  const int n = static_cast<int>(domains.size());
  auto sizes = enumerable_sizes(domains, cap, "check_allocation_monotone");
  std::optional<ViolationReport> found;
  for_each_profile(sizes, [&](std::vector<Int>& profile) {
    for (int i = 0; i < n && !found; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      if (profile[ui] != 0) continue;  // sweep each axis once per base profile
      std::vector<int> quantity(static_cast<std::size_t>(sizes[ui]));
      for (std::int64_t t = 0; t < sizes[ui]; ++t) {
        profile[ui] = t;
        quantity[static_cast<std::size_t>(t)] =
            quantity_of(rule(profile), i, "check_allocation_monotone");
      }
      profile[ui] = 0;
      for (std::int64_t t = 0; t < sizes[ui] && !found; ++t)
        for (std::int64_t u = t + 1; u < sizes[ui] && !found; ++u) {
          const int q_lo = quantity[static_cast<std::size_t>(t)];
          const int q_hi = quantity[static_cast<std::size_t>(u)];
          if (q_hi >= q_lo) continue;
          ViolationReport report;
          report.kind = ViolationReport::Kind::Monotonicity;
          report.witness = {Int(i), Int(t), Int(u), Int(q_lo), Int(q_hi)};
          profile[ui] = t;
          for (const Int& entry : profile) report.witness.push_back(entry);
          profile[ui] = 0;
          std::ostringstream os;
          os << "player " << i << ": report " << t << " receives " << q_lo
             << " items but higher report " << u << " receives " << q_hi;
          report.detail = os.str();
          found = std::move(report);
        }
    }
    return !found;
  });
  (void)m;
  return found;
}

std::optional<ViolationReport> check_tiebreak_monotone(
    const RuleFn& rule, const std::vector<Domain>& domains, int m,
    std::int64_t cap) {
  const int n = static_cast<int>(domains.size());
  auto sizes = enumerable_sizes(domains, cap, "check_tiebreak_monotone");
  std::optional<ViolationReport> found;
  for_each_profile(sizes, [&](std::vector<Int>& profile) {
    for (int i = 0; i < n && !found; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      if (profile[ui] != 0) continue;
      std::vector<int> quantity(static_cast<std::size_t>(sizes[ui]));
      for (std::int64_t t = 0; t < sizes[ui]; ++t) {
        profile[ui] = t;
        quantity[static_cast<std::size_t>(t)] =
            quantity_of(rule(profile), i, "check_tiebreak_monotone");
      }
      profile[ui] = 0;
      for (std::int64_t t = 0; t < sizes[ui] && !found; ++t)
        for (std::int64_t u = t + 1; u < sizes[ui] && !found; ++u) {
          const int a_hi = quantity[static_cast<std::size_t>(t)];  // lower report
          const int a_lo = quantity[static_cast<std::size_t>(u)];  // higher report
          if (a_lo >= a_hi) continue;  // not an inversion
          const Domain& d = domains[ui];
          const Int gain_hi = d.query(Int(u), a_hi) - d.query(Int(u), a_lo);
          const Int gain_lo = d.query(Int(t), a_hi) - d.query(Int(t), a_lo);
          if (gain_hi == gain_lo) continue;  // a genuine value tie
          ViolationReport report;
          report.kind = ViolationReport::Kind::TieBreakMonotonicity;
          report.witness = {Int(i),    Int(t),  Int(u),  Int(a_hi),
                            Int(a_lo), gain_hi, gain_lo};
          profile[ui] = t;
          for (const Int& entry : profile) report.witness.push_back(entry);
          profile[ui] = 0;
          std::ostringstream os;
          os << "player " << i << ": higher report " << u << " loses items ("
             << a_hi << " -> " << a_lo << ") and values the difference at "
             << int_str(gain_hi) << ", not the lower report's " << int_str(gain_lo);
          report.detail = os.str();
          found = std::move(report);
        }
    }
    return !found;
  });
  (void)m;
  return found;
}

std::optional<ViolationReport> check_incentive_compatible(
    const RuleFn& rule, const PaymentRuleFn& payment,
    const std::vector<Domain>& domains, int m, std::int64_t cap) {
  const int n = static_cast<int>(domains.size());
  auto sizes = enumerable_sizes(domains, cap, "check_incentive_compatible");
  std::optional<ViolationReport> found;
  for_each_profile(sizes, [&](std::vector<Int>& profile) {
    for (int i = 0; i < n && !found; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      if (profile[ui] != 0) continue;
      const std::int64_t size_i = sizes[ui];
      std::vector<int> quantity(static_cast<std::size_t>(size_i));
      std::vector<Rat> charge(static_cast<std::size_t>(size_i));
      for (std::int64_t t = 0; t < size_i; ++t) {
        profile[ui] = t;
        quantity[static_cast<std::size_t>(t)] =
            quantity_of(rule(profile), i, "check_incentive_compatible");
        charge[static_cast<std::size_t>(t)] = payment(profile, i);
      }
      profile[ui] = 0;
      const Domain& d = domains[ui];
      for (std::int64_t truth = 0; truth < size_i && !found; ++truth) {
        const Rat honest = Rat(d.query(Int(truth), quantity[static_cast<std::size_t>(truth)])) -
                           charge[static_cast<std::size_t>(truth)];
        for (std::int64_t lie = 0; lie < size_i && !found; ++lie) {
          if (lie == truth) continue;
          const Rat deviant = Rat(d.query(Int(truth), quantity[static_cast<std::size_t>(lie)])) -
                              charge[static_cast<std::size_t>(lie)];
          if (honest >= deviant) continue;
          ViolationReport report;
          report.kind = ViolationReport::Kind::Incentive;
          report.witness = {Int(i), Int(truth), Int(lie)};
          profile[ui] = truth;
          for (const Int& entry : profile) report.witness.push_back(entry);
          profile[ui] = 0;
          std::ostringstream os;
          os << "player " << i << ": truthful report " << truth << " yields utility "
             << rat_to_string(honest) << " but deviating to " << lie << " yields "
             << rat_to_string(deviant);
          report.detail = os.str();
          found = std::move(report);
        }
      }
    }
    return !found;
  });
  (void)m;
  return found;
}

std::optional<ViolationReport> check_sketch_quality(const Domain& domain,
                                                    const std::vector<int>& K,
                                                    const Rat& epsilon,
                                                    std::int64_t cap) {
  if (epsilon <= 0) throw std::invalid_argument("check_sketch_quality: epsilon must be positive");
  if (K.empty() || K.front() != 0 || !std::is_sorted(K.begin(), K.end()) ||
      std::adjacent_find(K.begin(), K.end()) != K.end() || K.back() > domain.m())
    throw std::invalid_argument("check_sketch_quality: malformed quantity set");

  const int size = domain.size_int("check_sketch_quality");
  const int m = domain.m();
  if (static_cast<std::int64_t>(size) * (m + 1) > cap)
    throw CapacityError("check_sketch_quality: family too large for the cap");

  // Part 1: pointwise restriction error against each member's own grand bundle.
  for (int t = 0; t < size; ++t) {
    Valuation v = domain.materialize(t);
    Valuation restricted = project(v, K);
    const Int& grand = v.value(m);
    for (int s = 0; s <= m; ++s) {
      const Int diff = v.value(s) - restricted.value(s);
      if (diff < 0)
        throw IntegrityError("check_sketch_quality: restriction exceeds original");
      if (Rat(diff) <= epsilon * Rat(grand)) continue;
      ViolationReport report;
      report.kind = ViolationReport::Kind::Sketch;
      report.witness = {Int(t), Int(s), v.value(s), restricted.value(s)};
      std::ostringstream os;
      os << "member " << t << " at quantity " << s << ": restriction drops "
         << int_str(diff) << " > " << rat_to_string(epsilon * Rat(grand))
         << " (fraction of grand bundle " << int_str(grand) << ")";
      report.detail = os.str();
      return report;
    }
  }

  // Part 2: the restricted family keeps the ordering property.
  if (auto violation = validate_domain(project_domain(domain, K), cap))
    return wrap_ordering_violation(*violation, ViolationReport::Kind::Sketch,
                                   "restricted family loses ordering: ");

  // Part 3: the set's size against the bound implied by epsilon and the
  // family's value bit-length.
  const int bits = domain.value_bits();
  const Int threshold = Int(1) << bits;
  const Rat growth = Rat(1) + epsilon / 2;
  Rat reach = 1;
  std::int64_t levels = 0;
  while (reach < Rat(threshold)) {
    reach *= growth;
    ++levels;
    if (levels > 1'000'000)
      throw CapacityError("check_sketch_quality: size bound blew past 10^6 levels");
  }
  const std::int64_t bound = (levels + 1) * (levels + 1) + 1;
  if (static_cast<std::int64_t>(K.size()) > bound) {
    ViolationReport report;
    report.kind = ViolationReport::Kind::Sketch;
    report.witness = {Int(static_cast<std::int64_t>(K.size())), Int(bound)};
    std::ostringstream os;
    os << "quantity set has " << K.size() << " entries, above the bound " << bound
       << " for " << bits << " value bits";
    report.detail = os.str();
    return report;
  }
  return std::nullopt;
}

std::optional<ViolationReport> check_no_small_sketch(const Domain& domain,
                                                     const Rat& factor,
                                                     std::int64_t cap) {
  if (factor <= 1) throw std::invalid_argument("check_no_small_sketch: factor must exceed 1");
  const int size = domain.size_int("check_no_small_sketch");
  const int m = domain.m();
  if (static_cast<std::int64_t>(size) * (m + 1) > cap)
    throw CapacityError("check_no_small_sketch: family too large for the cap");
  std::vector<Valuation> members = domain.materialize_all();

  // Dropping q from the full quantity set changes a member's value only at
  // s = q, where it falls back to the value at q - 1.
  for (int q = 1; q <= m; ++q) {
    bool any_change = false;
    bool costly = false;
    int best_member = -1;
    Rat best_ratio = 0;  // projected / original among changed members
    for (int t = 0; t < size; ++t) {
      const Int& original = members[static_cast<std::size_t>(t)].value(q);
      const Int& projected = members[static_cast<std::size_t>(t)].value(q - 1);
      if (projected == original) continue;
      any_change = true;
      if (Rat(projected) * factor <= Rat(original)) {
        costly = true;
        break;
      }
      const Rat ratio = Rat(projected) / Rat(original);
      if (best_member < 0 || ratio < best_ratio) {
        best_member = t;
        best_ratio = ratio;
      }
    }
    if (!any_change || costly) continue;
    ViolationReport report;
    report.kind = ViolationReport::Kind::Sketch;
    report.witness = {Int(q), Int(best_member),
                      members[static_cast<std::size_t>(best_member)].value(q - 1),
                      members[static_cast<std::size_t>(best_member)].value(q)};
    std::ostringstream os;
    os << "dropping quantity " << q << " changes values but never costs a factor of "
       << rat_to_string(factor) << "; cheapest change is member " << best_member
       << " falling from "
       << int_str(members[static_cast<std::size_t>(best_member)].value(q)) << " to "
       << int_str(members[static_cast<std::size_t>(best_member)].value(q - 1));
    report.detail = os.str();
    return report;
  }
  return std::nullopt;
}

std::int64_t count_satisfying(const CnfFormula& formula) {
  if (formula.num_vars < 0 || formula.num_vars > 20)
    throw CapacityError("count_satisfying: enumeration capped at 20 variables");
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars;
  std::int64_t count = 0;
  for (std::uint64_t assignment = 0; assignment < total; ++assignment)
    if (satisfies(formula, assignment)) ++count;
  return count;
}

Rat empirical_ratio(const std::function<Allocation(const AuctionInstance&)>& rule,
                    const std::vector<AuctionInstance>& instances,
                    std::int64_t cap_per_instance) {
  std::optional<Rat> worst;
  for (const auto& instance : instances) {
    BruteForceResult opt = brute_force_opt(instance, cap_per_instance);
    Rat ratio = 1;
    if (opt.welfare > 0) {
      Allocation alloc = rule(instance);
      if (static_cast<int>(alloc.size()) != instance.n())
        throw IntegrityError("empirical_ratio: rule returned a short allocation");
      int handed = 0;
      for (int q : alloc) {
        if (q < 0 || q > instance.m)
          throw IntegrityError("empirical_ratio: quantity out of range");
        handed += q;
      }
      if (handed > instance.m)
        throw IntegrityError("empirical_ratio: allocation exceeds the supply");
      Int welfare = 0;
      for (int i = 0; i < instance.n(); ++i)
        welfare += instance.reported_valuation(i).value(
            alloc[static_cast<std::size_t>(i)]);
      ratio = Rat(welfare) / Rat(opt.welfare);
    }
    if (!worst || ratio < *worst) worst = ratio;
  }
  return worst.value_or(Rat(1));
}

}  // namespace mua
