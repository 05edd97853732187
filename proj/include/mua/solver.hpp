#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mua/rounding.hpp"

namespace mua {

// Preference order on allocations used to break welfare ties:
//   a beats b when a hands out fewer items in total, or totals are equal and
//   a gives more to the highest-indexed player where they differ.
// Returns +1 when a beats b, -1 when b beats a, 0 when identical.
int tie_compare(const Allocation& a, const Allocation& b);

// Smallest quantity s with u(s) >= w units, by binary search (u is monotone);
// nullopt when even the grand bundle falls short.
std::optional<int> min_items_for_value(const RoundedValuation& u, std::int64_t w_units);

// Welfare-indexed table for players 1..i: the minimum number of items needed
// to reach each welfare level, together with the tie-order-maximal allocation
// achieving that minimum. Stored sparsely, one cell per achievable welfare
// value; between achievable values the feasible-allocation set (hence the
// cell) is constant, so lookups round the queried welfare up to the next
// achievable value.
class DPTable {
 public:
  struct Cell {
    std::int64_t items = 0;
    Allocation alloc;  // entries for players 1..i, in order
  };
  struct Segment {
    std::int64_t w_units = 0;
    std::int64_t items = 0;
    Allocation alloc;
  };

  int n() const { return static_cast<int>(rows_.size()) - 1; }
  std::int64_t max_welfare_units() const;  // largest achievable welfare, full row

  // Minimum items (and allocation) for players 1..i to reach welfare >= w;
  // nullopt when unreachable. i in 0..n.
  std::optional<Cell> cell(int i, std::int64_t w_units) const;

  // Ascending achievable welfare values for players 1..i.
  const std::vector<Segment>& row(int i) const {
    return rows_.at(static_cast<std::size_t>(i));
  }

  // The table's final answer: the allocation of the highest-welfare cell in
  // the last row whose item count fits within m.
  Allocation answer(int m) const;

 private:
  friend DPTable build_dp_table(const std::vector<RoundedValuation>&,
                                const std::vector<std::vector<int>>&,
                                std::int64_t);
  std::vector<std::vector<Segment>> rows_;
};

// Builds the full table. menus[i] lists the candidate quantities for player i
// (always treated as containing 0; rounded valuations are step functions, so
// restricting the per-player choice to step quantities changes nothing: a
// non-step quantity ties the value of the next lower step point with strictly
// more items and can never win a cell). Intended for verification and small
// instances; refuses beyond max_cells candidate evaluations.
DPTable build_dp_table(const std::vector<RoundedValuation>& us,
                       const std::vector<std::vector<int>>& menus,
                       std::int64_t max_cells = 20'000'000);

struct SolveResult {
  Allocation alloc;
  std::int64_t welfare_units = 0;
};

// Welfare-maximizing allocation of at most m items with ties broken by the
// tie order, equal to the table's answer but computed by an items-indexed
// sweep: max welfare per item budget, then a reverse-lexicographic
// reconstruction of the tie-order-maximal optimum.
SolveResult max_welfare_dp(const std::vector<RoundedValuation>& us, int m,
                           const std::vector<std::vector<int>>& menus);

// Convenience overload with the full menu 0..m for every player.
SolveResult max_welfare_dp(const std::vector<RoundedValuation>& us, int m);

}  // namespace mua
