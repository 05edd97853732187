#include "mua/solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mua {

int tie_compare(const Allocation& a, const Allocation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("tie_compare: allocations must have equal length");
  int sum_a = total_items(a);
  int sum_b = total_items(b);
  if (sum_a != sum_b) return sum_a < sum_b ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

std::optional<int> min_items_for_value(const RoundedValuation& u, std::int64_t w_units) {
  if (w_units <= 0) return 0;
  if (u.unit(u.m) < w_units) return std::nullopt;
  int lo = 0, hi = u.m;  // u(lo) < w <= u(hi)
  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    if (u.unit(mid) >= w_units)
      hi = mid;
    else
      lo = mid;
  }
  return u.unit(0) >= w_units ? 0 : hi;
}

namespace {

std::vector<std::vector<int>> sanitized_menus(const std::vector<RoundedValuation>& us,
                                              const std::vector<std::vector<int>>& menus,
                                              int m) {
  if (us.empty()) throw std::invalid_argument("welfare DP: at least one player required");
  if (menus.size() != us.size())
    throw std::invalid_argument("welfare DP: one menu per player required");
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (us[i].m != m) throw std::invalid_argument("welfare DP: valuation m mismatch");
    if (us[i].delta != us[0].delta)
      throw std::invalid_argument("welfare DP: all valuations must share delta");
  }
  std::vector<std::vector<int>> out = menus;
  for (auto& menu : out) {
    menu.push_back(0);
    std::sort(menu.begin(), menu.end());
    menu.erase(std::unique(menu.begin(), menu.end()), menu.end());
    if (menu.front() < 0 || menu.back() > m)
      throw std::invalid_argument("welfare DP: menu quantity out of range");
  }
  return out;
}

void check_unit_budget(const std::vector<RoundedValuation>& us) {
  std::int64_t budget = std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t total = 0;
  for (const auto& u : us) {
    if (u.unit(u.m) > budget - total)
      throw CapacityError("welfare DP: welfare units exceed the 64-bit budget");
    total += u.unit(u.m);
  }
}

}  // namespace

std::int64_t DPTable::max_welfare_units() const {
  return rows_.back().back().w_units;
}

std::optional<DPTable::Cell> DPTable::cell(int i, std::int64_t w_units) const {
  const auto& row = rows_.at(static_cast<std::size_t>(i));
  if (w_units <= 0) w_units = 0;
  auto it = std::lower_bound(row.begin(), row.end(), w_units,
                             [](const Segment& s, std::int64_t w) { return s.w_units < w; });
  if (it == row.end()) return std::nullopt;
  return Cell{it->items, it->alloc};
}

Allocation DPTable::answer(int m) const {
  const auto& last = rows_.back();
  for (std::size_t idx = last.size(); idx-- > 0;) {
    if (last[idx].items <= m) return last[idx].alloc;
  }
  throw IntegrityError("DPTable::answer: no feasible cell (missing zero-welfare row)");
}

DPTable build_dp_table(const std::vector<RoundedValuation>& us,
                       const std::vector<std::vector<int>>& menus,
                       std::int64_t max_cells) {
  const int m = us.front().m;
  auto menu = sanitized_menus(us, menus, m);
  check_unit_budget(us);

  DPTable table;
  table.rows_.resize(us.size() + 1);
  table.rows_[0] = {DPTable::Segment{0, 0, Allocation{}}};

  for (std::size_t i = 1; i <= us.size(); ++i) {
    const auto& prev = table.rows_[i - 1];
    const auto& u = us[i - 1];
    const auto& mi = menu[i - 1];
    std::int64_t combos = static_cast<std::int64_t>(prev.size()) *
                          static_cast<std::int64_t>(mi.size());
    if (combos > max_cells)
      throw CapacityError("build_dp_table: candidate count exceeds the cap");

    // Every (previous cell, menu choice) pair is a candidate partial
    // allocation; a cell at welfare w is the item-minimal, then
    // tie-order-maximal candidate among those with welfare >= w. Sweeping
    // candidates by descending welfare keeps a running best.
    struct Cand {
      std::int64_t w;
      std::int64_t items;
      const DPTable::Segment* from;
      int c;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(combos));
    for (const auto& seg : prev)
      for (int c : mi)
        cands.push_back({seg.w_units + u.unit(c), seg.items + c, &seg, c});
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.w > b.w; });

    std::vector<DPTable::Segment> row;
    std::int64_t best_items = std::numeric_limits<std::int64_t>::max();
    Allocation best_alloc;
    std::size_t idx = 0;
    while (idx < cands.size()) {
      std::int64_t w = cands[idx].w;
      // absorb all candidates at this welfare level, then emit the cell
      while (idx < cands.size() && cands[idx].w == w) {
        const Cand& cd = cands[idx];
        Allocation alloc = cd.from->alloc;
        alloc.push_back(cd.c);
        if (cd.items < best_items ||
            (cd.items == best_items && tie_compare(alloc, best_alloc) > 0)) {
          best_items = cd.items;
          best_alloc = std::move(alloc);
        }
        ++idx;
      }
      row.push_back(DPTable::Segment{w, best_items, best_alloc});
    }
    std::reverse(row.begin(), row.end());
    table.rows_[i] = std::move(row);
  }
  return table;
}

SolveResult max_welfare_dp(const std::vector<RoundedValuation>& us, int m,
                           const std::vector<std::vector<int>>& menus) {
  auto menu = sanitized_menus(us, menus, m);
  check_unit_budget(us);
  const int n = static_cast<int>(us.size());

  // best[i][t]: max welfare units for players 1..i using at most t items.
  std::vector<std::vector<std::int64_t>> best(
      static_cast<std::size_t>(n) + 1,
      std::vector<std::int64_t>(static_cast<std::size_t>(m) + 1, 0));
  for (int i = 1; i <= n; ++i) {
    const auto& u = us[static_cast<std::size_t>(i - 1)];
    const auto& mi = menu[static_cast<std::size_t>(i - 1)];
    for (int t = 0; t <= m; ++t) {
      std::int64_t b = 0;
      for (int c : mi) {
        if (c > t) break;
        b = std::max(b, best[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(t - c)] +
                            u.unit(c));
      }
      best[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = b;
    }
  }

  const std::int64_t w_star = best[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
  int budget = m;
  while (budget > 0 &&
         best[static_cast<std::size_t>(n)][static_cast<std::size_t>(budget - 1)] == w_star)
    --budget;

  // Reconstruct the tie-order-maximal optimum: hand the highest-indexed
  // player the largest quantity consistent with optimality, then recurse.
  Allocation alloc(static_cast<std::size_t>(n), 0);
  std::int64_t w_rem = w_star;
  int t_rem = budget;
  for (int i = n; i >= 1; --i) {
    const auto& u = us[static_cast<std::size_t>(i - 1)];
    const auto& mi = menu[static_cast<std::size_t>(i - 1)];
    int chosen = -1;
    for (auto it = mi.rbegin(); it != mi.rend(); ++it) {
      int c = *it;
      if (c > t_rem) continue;
      if (best[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(t_rem - c)] ==
          w_rem - u.unit(c)) {
        chosen = c;
        break;
      }
    }
    if (chosen < 0) throw IntegrityError("max_welfare_dp: reconstruction failed");
    alloc[static_cast<std::size_t>(i - 1)] = chosen;
    w_rem -= u.unit(chosen);
    t_rem -= chosen;
  }
  if (w_rem != 0 || t_rem != 0)
    throw IntegrityError("max_welfare_dp: reconstruction out of balance");
  return SolveResult{std::move(alloc), w_star};
}

SolveResult max_welfare_dp(const std::vector<RoundedValuation>& us, int m) {
  std::vector<std::vector<int>> menus(us.size());
  for (auto& menu : menus) {
    menu.resize(static_cast<std::size_t>(m) + 1);
    for (int c = 0; c <= m; ++c) menu[static_cast<std::size_t>(c)] = c;
  }
  return max_welfare_dp(us, m, menus);
}

}  // namespace mua
