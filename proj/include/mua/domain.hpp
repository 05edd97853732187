#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mua/numeric.hpp"

namespace mua {

// A valuation over quantities 0..m of identical items: normalized (value(0)=0)
// and non-decreasing. Values are exact integers.
struct Valuation {
  int m = 0;
  std::vector<Int> values;  // size m+1, values[0] == 0

  const Int& value(int s) const { return values.at(static_cast<std::size_t>(s)); }

  // Returns an explanation when the shape constraints fail, nullopt when valid.
  std::optional<std::string> invalid_reason() const;
};

// Quantities handed to each player; the feasibility constraint is sum <= m.
using Allocation = std::vector<int>;

int total_items(const Allocation& a);

// The quantities at which a k-minded valuation may change value. Strictly
// increasing, within 1..m.
struct KMindedStructure {
  std::vector<int> steps;

  int k() const { return static_cast<int>(steps.size()); }
  std::optional<std::string> invalid_reason(int m) const;
};

// An ordered family of valuations over 0..m, addressed by an index t in
// 0..size-1 ("extended value queries"). Families may be explicit vectors or
// lazily computed (some constructions index astronomically many valuations).
// Higher-indexed valuations are expected to have weakly larger marginal gains
// between any two quantities; validate_domain checks that exhaustively.
class Domain {
 public:
  Domain() = default;

  static Domain from_fn(int m, Int size, std::function<Int(const Int&, int)> fn);
  static Domain from_valuations(int m, std::vector<Valuation> valuations);

  int m() const { return m_; }
  const Int& size() const { return size_; }

  // size as a plain int; throws CapacityError when the family is too large to
  // enumerate (lazy constructions can have e.g. 2^56 members).
  int size_int(const char* context = "domain size") const {
    if (size_ > Int(std::numeric_limits<int>::max()))
      throw CapacityError(std::string(context) + ": family too large to enumerate");
    return size_.convert_to<int>();
  }

  // Extended value query: value of the t-th valuation at quantity s.
  // Every valuation is normalized, so (t, 0) always answers 0.
  Int query(const Int& t, int s) const;
  Int query(int t, int s) const { return query(Int(t), s); }

  Valuation materialize(const Int& t) const;
  Valuation materialize(int t) const { return materialize(Int(t)); }
  std::vector<Valuation> materialize_all() const;

  // The first `count` valuations as a standalone family (used to spot-check
  // lazily defined families whose full index range is not enumerable).
  Domain prefix(const Int& count) const;

  // Bit length of the largest grand-bundle value in the family (the last
  // valuation's, since marginal dominance makes grand-bundle values
  // non-decreasing along the order). 0 for an all-zero family.
  int value_bits() const;

  // Query instrumentation; counts are shared between copies of this Domain.
  std::int64_t query_count() const { return *query_count_; }
  void reset_query_count() const { *query_count_ = 0; }

 private:
  int m_ = 0;
  Int size_ = 0;
  std::function<Int(const Int&, int)> fn_;
  std::shared_ptr<std::int64_t> query_count_ = std::make_shared<std::int64_t>(0);
};

// Free-function spelling of the extended value query.
inline Int query_value(const Domain& d, const Int& t, int s) { return d.query(t, s); }
inline Int query_value(const Domain& d, int t, int s) { return d.query(t, s); }

// Witness for a failed ordering check: the four-tuple (t_lo, t_hi, s_lo, s_hi)
// with the corresponding values, so the inequality can be replayed.
struct SingleCrossingViolation {
  Int t_lo, t_hi;
  int s_lo = 0, s_hi = 0;
  Int lo_at_slo, lo_at_shi, hi_at_slo, hi_at_shi;
};

// Exhaustively checks that for every t < t' and s < s':
//   v^[t'](s') - v^[t'](s) >= v^[t](s') - v^[t](s).
// Also validates each member valuation's shape. Returns the first violation in
// (t, t', s, s') scan order, nullopt when the family is properly ordered.
// Refuses (CapacityError) when the family exceeds `max_pairs` ordered pairs.
std::optional<SingleCrossingViolation> validate_domain(
    const Domain& d, std::int64_t max_pairs = 1'000'000);

// The quantities at which any member of the family changes value - the
// smallest step structure the whole family fits. Requires an enumerable
// family.
KMindedStructure derive_step_set(const Domain& d);

// One auction: m identical items, one valuation family per player, and the
// index each player reports.
struct AuctionInstance {
  int m = 0;
  std::vector<Domain> domains;
  std::vector<Int> reports;

  int n() const { return static_cast<int>(domains.size()); }
  Valuation reported_valuation(int player) const {
    return domains.at(static_cast<std::size_t>(player))
        .materialize(reports.at(static_cast<std::size_t>(player)));
  }
  std::optional<std::string> invalid_reason() const;
};

// A single-minded bid: `value` for any quantity >= `quantity`, zero below.
struct SingleMindedBid {
  Int value;
  int quantity = 0;
};

// Auction where each player's family consists of single-minded bids.
struct SingleMindedInstance {
  int m = 0;
  std::vector<std::vector<SingleMindedBid>> domains;
  std::vector<int> reports;

  int n() const { return static_cast<int>(domains.size()); }
  const SingleMindedBid& reported_bid(int player) const {
    return domains.at(static_cast<std::size_t>(player))
        .at(static_cast<std::size_t>(reports.at(static_cast<std::size_t>(player))));
  }
};

// The step function a single bid induces over 0..m.
Valuation bid_valuation(const SingleMindedBid& bid, int m);

// A player's family of single-minded bids as a Domain.
Domain single_minded_domain(const std::vector<SingleMindedBid>& bids, int m);

// --- 3-CNF formulas with a canonical integer encoding ---------------------
//
// Literals over variables 1..k are indexed 0..2k-1: literal 2(v-1) is x_v,
// literal 2(v-1)+1 is its negation. A clause is a sorted multiset of three
// literal indices; the universe of clauses is ordered lexicographically. A
// formula is a subset of the universe; its ordinal is the bit vector over
// clause ranks, read as an integer.

using Clause = std::array<int, 3>;  // non-decreasing literal indices

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;  // distinct, sorted by rank
};

// Number of clauses in the universe over k variables: the count of
// non-decreasing triples over 2k literals, (2k)(2k+1)(2k+2)/6.
std::int64_t clause_universe_size(int num_vars);

std::int64_t clause_rank(const Clause& c, int num_vars);
Clause clause_unrank(std::int64_t rank, int num_vars);

Int formula_ordinal(const CnfFormula& f);
CnfFormula formula_from_ordinal(int num_vars, const Int& ordinal);

// Does the assignment (bit v-1 of `assignment` gives variable v) satisfy every
// clause?
bool satisfies(const CnfFormula& f, std::uint64_t assignment);

}  // namespace mua
