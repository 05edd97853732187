#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mua/domain.hpp"
#include "mua/generators.hpp"
#include "mua/numeric.hpp"

using namespace mua;

namespace {

Domain explicit_domain(int m, const std::vector<std::vector<int>>& rows) {
  std::vector<Valuation> vals;
  for (const auto& row : rows) {
    Valuation v;
    v.m = m;
    for (int x : row) v.values.push_back(Int(x));
    vals.push_back(std::move(v));
  }
  return Domain::from_valuations(m, std::move(vals));
}

}  // namespace

TEST_CASE("valuation shape validation") {
  Valuation good{2, {Int(0), Int(1), Int(3)}};
  CHECK(!good.invalid_reason());

  Valuation unnormalized{2, {Int(1), Int(1), Int(3)}};
  CHECK(unnormalized.invalid_reason());

  Valuation decreasing{2, {Int(0), Int(3), Int(2)}};
  CHECK(decreasing.invalid_reason());

  Valuation short_row{2, {Int(0), Int(1)}};
  CHECK(short_row.invalid_reason());

  Valuation negative{1, {Int(0), Int(-2)}};
  CHECK(negative.invalid_reason());
}

TEST_CASE("extended value queries answer the table and normalize zero") {
  Domain d = explicit_domain(1, {{0, 0}, {0, 5}});
  CHECK(d.query(1, 1) == 5);
  CHECK(d.query(0, 1) == 0);
  // Quantity zero answers 0 for every member of every family.
  CHECK(d.query(0, 0) == 0);
  CHECK(d.query(1, 0) == 0);
  CHECK(query_value(d, 1, 1) == 5);

  CHECK_THROWS_AS(d.query(2, 0), std::out_of_range);
  CHECK_THROWS_AS(d.query(0, 2), std::out_of_range);
  CHECK_THROWS_AS(d.query(-1, 0), std::out_of_range);
}

TEST_CASE("lazy families answer zero at quantity zero regardless of the formula") {
  Domain d = Domain::from_fn(4, Int(3), [](const Int& t, int s) {
    return t * s + 7;  // deliberately nonzero at s == 0; query must normalize
  });
  CHECK(d.query(2, 0) == 0);
  CHECK(d.query(2, 1) == 9);
}

TEST_CASE("query counting is shared between copies") {
  Domain d = explicit_domain(2, {{0, 1, 2}});
  d.reset_query_count();
  (void)d.query(0, 1);
  (void)d.query(0, 2);
  CHECK(d.query_count() == 2);
  Domain copy = d;
  (void)copy.query(0, 1);
  CHECK(d.query_count() == 3);
  d.reset_query_count();
  CHECK(copy.query_count() == 0);
}

TEST_CASE("domain validation finds the first ordering violation") {
  Domain bad = explicit_domain(2, {{0, 2, 2}, {0, 1, 3}});
  auto violation = validate_domain(bad);
  REQUIRE(violation.has_value());
  CHECK(violation->t_lo == 0);
  CHECK(violation->t_hi == 1);
  CHECK(violation->s_lo == 0);
  CHECK(violation->s_hi == 1);
  // Replay: the higher member gains 1 over the span, the lower gains 2.
  CHECK(violation->hi_at_shi - violation->hi_at_slo <
        violation->lo_at_shi - violation->lo_at_slo);
}

TEST_CASE("domain validation accepts single members and ordered families") {
  CHECK(!validate_domain(explicit_domain(3, {{0, 1, 1, 9}})));
  CHECK(!validate_domain(explicit_domain(2, {{0, 1, 2}, {0, 1, 3}, {0, 2, 5}})));
  CHECK(!validate_domain(gen_nosketch_domain(16)));
}

TEST_CASE("domain validation refuses oversized pair counts") {
  Domain d = explicit_domain(2, {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}});
  CHECK_THROWS_AS(validate_domain(d, 2), CapacityError);
}

TEST_CASE("step-set derivation keeps exactly the quantities where value changes") {
  Domain d = explicit_domain(4, {{0, 0, 2, 2, 2}, {0, 1, 3, 3, 7}});
  KMindedStructure steps = derive_step_set(d);
  CHECK(steps.steps == std::vector<int>{1, 2, 4});
  CHECK(steps.k() == 3);

  Domain zero = explicit_domain(3, {{0, 0, 0, 0}});
  CHECK(derive_step_set(zero).steps.empty());
}

TEST_CASE("step structures validate range and strict increase") {
  CHECK(!KMindedStructure{{1, 3}}.invalid_reason(4));
  CHECK(KMindedStructure{{0, 2}}.invalid_reason(4));
  CHECK(KMindedStructure{{2, 2}}.invalid_reason(4));
  CHECK(KMindedStructure{{3, 2}}.invalid_reason(4));
  CHECK(KMindedStructure{{1, 5}}.invalid_reason(4));
  CHECK(!KMindedStructure{{}}.invalid_reason(4));
}

TEST_CASE("prefix restricts the family without changing values") {
  Domain d = explicit_domain(2, {{0, 0, 1}, {0, 1, 2}, {0, 3, 6}});
  Domain p = d.prefix(2);
  CHECK(p.size() == 2);
  CHECK(p.query(1, 2) == 2);
  CHECK_THROWS_AS(p.query(2, 0), std::out_of_range);
  CHECK_THROWS_AS(d.prefix(4), std::out_of_range);
}

TEST_CASE("value bit length tracks the largest grand bundle") {
  CHECK(explicit_domain(2, {{0, 0, 0}}).value_bits() == 0);
  CHECK(explicit_domain(2, {{0, 1, 5}}).value_bits() == 3);
  CHECK(explicit_domain(1, {{0, 1}, {0, 256}}).value_bits() == 9);
}

TEST_CASE("auction instances validate report ranges and shared m") {
  Domain d = explicit_domain(2, {{0, 1, 2}, {0, 2, 4}});
  AuctionInstance ok{2, {d, d}, {Int(1), Int(0)}};
  CHECK(!ok.invalid_reason());
  CHECK(ok.reported_valuation(0).value(2) == 4);

  AuctionInstance bad_report{2, {d, d}, {Int(2), Int(0)}};
  CHECK(bad_report.invalid_reason());

  Domain other_m = explicit_domain(3, {{0, 1, 2, 3}});
  AuctionInstance mismatched{2, {d, other_m}, {Int(0), Int(0)}};
  CHECK(mismatched.invalid_reason());
}

TEST_CASE("single-minded bids induce step valuations") {
  Valuation v = bid_valuation({Int(7), 3}, 5);
  CHECK(v.values == std::vector<Int>{0, 0, 0, 7, 7, 7});
  CHECK(!v.invalid_reason());

  Valuation everything = bid_valuation({Int(4), 0}, 2);
  CHECK(everything.values == std::vector<Int>{0, 4, 4});

  Domain d = single_minded_domain({{Int(0), 3}, {Int(2), 3}, {Int(9), 3}}, 4);
  CHECK(d.size() == 3);
  CHECK(d.query(2, 3) == 9);
  CHECK(d.query(2, 2) == 0);
  CHECK(!validate_domain(d));
}

TEST_CASE("allocation totals") {
  CHECK(total_items({}) == 0);
  CHECK(total_items({2, 0, 3}) == 5);
}

TEST_CASE("clause universe sizes count non-decreasing literal triples") {
  CHECK(clause_universe_size(1) == 4);
  CHECK(clause_universe_size(2) == 20);
  CHECK(clause_universe_size(3) == 56);
  CHECK(clause_universe_size(4) == 120);
}

TEST_CASE("clause ranking is the lexicographic position") {
  CHECK(clause_rank({0, 0, 0}, 2) == 0);
  CHECK(clause_rank({0, 0, 1}, 2) == 1);
  CHECK(clause_rank({0, 0, 2}, 2) == 2);
  CHECK(clause_rank({0, 0, 3}, 2) == 3);
  CHECK(clause_rank({0, 1, 1}, 2) == 4);
  CHECK(clause_rank({3, 3, 3}, 2) == 19);
  CHECK_THROWS_AS(clause_rank({1, 0, 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(clause_rank({0, 0, 4}, 2), std::invalid_argument);
}

TEST_CASE("clause rank and unrank are inverse over the whole universe") {
  for (int vars = 1; vars <= 3; ++vars) {
    const std::int64_t universe = clause_universe_size(vars);
    Clause prev{-1, -1, -1};
    for (std::int64_t r = 0; r < universe; ++r) {
      Clause c = clause_unrank(r, vars);
      CHECK(clause_rank(c, vars) == r);
      CHECK(prev < c);  // strictly increasing in lexicographic order
      prev = c;
    }
    CHECK_THROWS_AS(clause_unrank(universe, vars), std::out_of_range);
  }
}

TEST_CASE("formula ordinals set one bit per clause rank") {
  CnfFormula f{2, {{0, 0, 2}}};
  CHECK(formula_ordinal(f) == 4);  // rank 2 -> bit 2

  CnfFormula g{2, {{0, 0, 0}, {0, 0, 2}}};
  CHECK(formula_ordinal(g) == 5);

  CnfFormula empty{2, {}};
  CHECK(formula_ordinal(empty) == 0);
}

TEST_CASE("formula decoding inverts encoding") {
  CnfFormula f = formula_from_ordinal(2, Int(5));
  CHECK(f.num_vars == 2);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] == Clause{0, 0, 0});
  CHECK(f.clauses[1] == Clause{0, 0, 2});

  // Round-trip across the 2-variable universe: strided sweep plus boundaries.
  const Int top = pow_int(2, 20);
  for (Int ordinal = 0; ordinal < top; ordinal += 9973) {
    CHECK(formula_ordinal(formula_from_ordinal(2, ordinal)) == ordinal);
  }
  CHECK(formula_ordinal(formula_from_ordinal(2, top - 1)) == top - 1);
  CHECK_THROWS_AS(formula_from_ordinal(2, top), std::out_of_range);

  // Random ordinals over the 3-variable universe (2^56 formulas).
  std::mt19937_64 rng(11);
  const Int top3 = pow_int(2, 56);
  for (int trial = 0; trial < 200; ++trial) {
    Int ordinal = (Int(rng()) * Int(rng())) % top3;
    CHECK(formula_ordinal(formula_from_ordinal(3, ordinal)) == ordinal);
  }
}

TEST_CASE("clause satisfaction reads literals against assignment bits") {
  // (x1 or x2 or x1) over two variables: literals 0, 0, 2.
  CnfFormula f{2, {{0, 0, 2}}};
  CHECK(!satisfies(f, 0));
  CHECK(satisfies(f, 1));
  CHECK(satisfies(f, 2));
  CHECK(satisfies(f, 3));

  // (not x1) three times over one variable: literal 1.
  CnfFormula neg{1, {{1, 1, 1}}};
  CHECK(satisfies(neg, 0));
  CHECK(!satisfies(neg, 1));

  // Empty formulas are satisfied by everything.
  CnfFormula empty{2, {}};
  for (std::uint64_t a = 0; a < 4; ++a) CHECK(satisfies(empty, a));

  // (x1 or x2 or x3): only the all-false assignment fails.
  CnfFormula wide{3, {{0, 2, 4}}};
  CHECK(!satisfies(wide, 0));
  for (std::uint64_t a = 1; a < 8; ++a) CHECK(satisfies(wide, a));
}
