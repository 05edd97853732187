#include "mua/payments.hpp"

#include <stdexcept>

namespace mua {

namespace {

// Player i's quantity when they report t and everyone else keeps their report.
int quantity_at(const AllocFn& alloc_fn, const AuctionInstance& instance, int player,
                const Int& t) {
  std::vector<Int> profile = instance.reports;
  profile[static_cast<std::size_t>(player)] = t;
  Allocation a = alloc_fn(profile);
  return a.at(static_cast<std::size_t>(player));
}

}  // namespace

std::vector<Rat> threshold_payments(const AllocFn& alloc_fn,
                                    const AuctionInstance& instance) {
  if (auto why = instance.invalid_reason())
    throw std::invalid_argument("threshold_payments: " + *why);
  const int n = instance.n();
  std::vector<Rat> out(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    const Domain& dom = instance.domains[static_cast<std::size_t>(i)];
    const Int& t_i = instance.reports[static_cast<std::size_t>(i)];
    const int q_final = quantity_at(alloc_fn, instance, i, t_i);
    int q_cur = quantity_at(alloc_fn, instance, i, Int(0));
    if (q_final < q_cur)
      throw IntegrityError("threshold_payments: allocation rule is not monotone");
    Int t_lo = 0;
    Int payment = 0;
    while (q_cur < q_final) {
      // First report in (t_lo, t_i] allocated more than q_cur.
      Int lo = t_lo, hi = t_i;
      while (lo + 1 < hi) {
        Int mid = lo + (hi - lo) / 2;
        int q_mid = quantity_at(alloc_fn, instance, i, mid);
        if (q_mid < q_cur)
          throw IntegrityError("threshold_payments: allocation rule is not monotone");
        if (q_mid > q_cur)
          hi = mid;
        else
          lo = mid;
      }
      const Int tau = hi;
      const int q_next = quantity_at(alloc_fn, instance, i, tau);
      if (q_next <= q_cur)
        throw IntegrityError("threshold_payments: allocation rule is not monotone");
      payment += dom.query(tau, q_next) - dom.query(tau, q_cur);
      q_cur = q_next;
      t_lo = tau;
    }
    out[static_cast<std::size_t>(i)] = Rat(payment);
  }
  return out;
}

std::vector<Rat> telescoping_payments(const AllocFn& alloc_fn,
                                      const AuctionInstance& instance,
                                      std::int64_t max_steps) {
  if (auto why = instance.invalid_reason())
    throw std::invalid_argument("telescoping_payments: " + *why);
  const int n = instance.n();
  std::vector<Rat> out(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    const Domain& dom = instance.domains[static_cast<std::size_t>(i)];
    const Int& t_i = instance.reports[static_cast<std::size_t>(i)];
    if (t_i > max_steps)
      throw CapacityError("telescoping_payments: report index too large to walk");
    Int payment = dom.query(t_i, quantity_at(alloc_fn, instance, i, t_i));
    for (Int d = 1; d <= t_i; ++d) {
      const int q_prev = quantity_at(alloc_fn, instance, i, d - 1);
      payment -= dom.query(d, q_prev) - dom.query(d - 1, q_prev);
    }
    out[static_cast<std::size_t>(i)] = Rat(payment);
  }
  return out;
}

Rat sample_payment_estimator(const AllocFn& alloc_fn, const AuctionInstance& instance,
                             int player, const Int& d,
                             const EstimatorBaseline* baseline) {
  if (auto why = instance.invalid_reason())
    throw std::invalid_argument("sample_payment_estimator: " + *why);
  const Domain& dom = instance.domains[static_cast<std::size_t>(player)];
  const Int& t_i = instance.reports[static_cast<std::size_t>(player)];
  EstimatorBaseline local;
  if (baseline == nullptr) {
    local.alloc = alloc_fn(instance.reports);
    local.value = dom.query(t_i, local.alloc.at(static_cast<std::size_t>(player)));
    baseline = &local;
  }
  if (t_i == 0) return Rat(baseline->value);
  if (d < 1 || d > t_i)
    throw std::invalid_argument("sample_payment_estimator: d must lie in 1..t_i");
  const int q_prev = quantity_at(alloc_fn, instance, player, d - 1);
  const Int jump = dom.query(d, q_prev) - dom.query(d - 1, q_prev);
  return Rat(baseline->value) - Rat(t_i) * Rat(jump);
}

std::vector<Rat> single_minded_payments(
    const std::function<Allocation(const std::vector<int>&)>& alloc_fn,
    const SingleMindedInstance& instance) {
  const int n = instance.n();
  std::vector<Rat> out(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    const auto& bids = instance.domains[static_cast<std::size_t>(i)];
    auto wins = [&](int t) {
      std::vector<int> profile = instance.reports;
      profile[static_cast<std::size_t>(i)] = t;
      Allocation a = alloc_fn(profile);
      return a.at(static_cast<std::size_t>(i)) >=
                 bids.at(static_cast<std::size_t>(t)).quantity &&
             bids.at(static_cast<std::size_t>(t)).value > 0;
    };
    const int t_i = instance.reports[static_cast<std::size_t>(i)];
    if (!wins(t_i)) continue;  // losing (or zero-value) reports pay nothing
    if (wins(0)) {
      out[static_cast<std::size_t>(i)] = Rat(bids.front().value);
      continue;
    }
    int lo = 0, hi = t_i;  // wins(lo) false, wins(hi) true
    while (lo + 1 < hi) {
      int mid = lo + (hi - lo) / 2;
      if (wins(mid))
        hi = mid;
      else
        lo = mid;
    }
    if (!wins(hi) || (hi > 0 && wins(hi - 1)))
      throw IntegrityError("single_minded_payments: win indicator is not monotone");
    out[static_cast<std::size_t>(i)] = Rat(bids.at(static_cast<std::size_t>(hi)).value);
  }
  return out;
}

}  // namespace mua
