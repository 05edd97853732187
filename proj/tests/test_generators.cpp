#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mua/domain.hpp"
#include "mua/generators.hpp"
#include "mua/numeric.hpp"

using namespace mua;

namespace {

bool constant_off_steps(const Valuation& v, const KMindedStructure& steps) {
  for (int s = 1; s <= v.m; ++s) {
    bool is_step = false;
    for (int q : steps.steps) is_step = is_step || (q == s);
    if (!is_step && v.value(s) != v.value(s - 1)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("random families are zero at zero ceiling and deterministic in the seed") {
  Domain zero = gen_random_single_crossing(5, 3, 4, 0);
  for (int t = 0; t < 3; ++t)
    for (int s = 0; s <= 4; ++s) CHECK(zero.query(t, s) == 0);

  Domain a = gen_random_single_crossing(123, 4, 6, 9);
  Domain b = gen_random_single_crossing(123, 4, 6, 9);
  for (int t = 0; t < 4; ++t)
    for (int s = 0; s <= 6; ++s) CHECK(a.query(t, s) == b.query(t, s));
}

TEST_CASE("random families always pass the ordering check") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int size = 1 + static_cast<int>(seed % 6);
    const int m = 1 + static_cast<int>(seed % 11);
    const std::int64_t max_marginal = static_cast<std::int64_t>(seed % 17);
    CHECK(!validate_domain(gen_random_single_crossing(seed, size, m, max_marginal)));
  }
}

TEST_CASE("step-restricted random families change value only at their steps") {
  KMindedStructure steps{{2, 5, 7}};
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Domain d = gen_random_k_minded(seed, 5, 8, steps, 10);
    CHECK(!validate_domain(d));
    for (const Valuation& v : d.materialize_all()) CHECK(constant_off_steps(v, steps));
  }
  CHECK_THROWS_AS(gen_random_k_minded(1, 2, 4, KMindedStructure{{0}}, 5),
                  std::invalid_argument);
}

TEST_CASE("scalar families value quantity s at t*s") {
  Domain d = gen_scalar_domain(4, 5);
  CHECK(d.size() == 5);
  CHECK(d.query(0, 4) == 0);
  CHECK(d.query(3, 2) == 6);
  CHECK(d.query(4, 4) == 16);
  CHECK(!validate_domain(d));
}

TEST_CASE("separation families follow the displayed formulas") {
  auto [first, second] = gen_separation_domains(2);
  const int m = 4;
  CHECK(first.size() == m);
  CHECK(second.size() == m);

  // x = 1 at quantity 3 carries the unit bonus: 100 + 10 + 12 + 1.
  CHECK(first.query(1, 3) == 123);
  // Away from witness quantities (and at s = 1) the bonus never fires.
  CHECK(first.query(1, 1) == 114);
  CHECK(first.query(1, 2) == 118);
  CHECK(first.query(1, 4) == 126);

  // x = 0: the constant term only, except the witness quantity (here s = m)
  // still carries its marker so the all-items split stands out.
  CHECK(first.query(0, 1) == 100);
  CHECK(first.query(0, 2) == 100);
  CHECK(first.query(0, 3) == 100);
  CHECK(first.query(0, 4) == 101);

  // Second player: marginals are 4x everywhere, including the first item.
  for (int x = 0; x < m; ++x)
    for (int s = 1; s <= m; ++s) CHECK(second.query(x, s) == 4 * s * x);

  CHECK(!validate_domain(first));
  CHECK(!validate_domain(second));
}

TEST_CASE("separation families accept a custom witness") {
  // Member 0 has zero per-item marginals, so its bonus must sit at s = m to
  // keep the valuation monotone; everyone else uses a small rotating split.
  auto witness = [](int x, int s) { return x == 0 ? s == 8 : s == ((x % 3) + 2); };
  auto [first, second] = gen_separation_domains(3, witness);
  (void)second;
  // x = 4 accepts s = 3: bonus there and nowhere else.
  CHECK(first.query(4, 3) == 1000 + 40 + 48 + 1);
  CHECK(first.query(4, 4) == 1000 + 40 + 64);
  CHECK(first.query(0, 7) == 1000);
  CHECK(first.query(0, 8) == 1001);
  CHECK(!validate_domain(first));
}

TEST_CASE("default witness is total and accepts a single quantity above one") {
  const int m = 8;
  WitnessPredicate w = default_witness(m);
  for (int x = 0; x < m; ++x) {
    int accepted = 0;
    int where = -1;
    for (int s = 0; s <= m; ++s) {
      if (w(x, s)) {
        ++accepted;
        where = s;
      }
    }
    CHECK(accepted == 1);
    CHECK(where > 1);
  }
  CHECK(w(0, 8));
  CHECK(w(1, 7));
  CHECK(w(5, 5));
}

TEST_CASE("two-player formula families pay 4sx plus the satisfiability marker") {
  auto [first, second] = gen_sat_twoplayer_domains(2);
  const int m = 4;
  CHECK(first.size() == pow_int(2, 20));

  // Ordinal 1025 = (x1 or x1 or x1) and (not x1 three times): a contradiction,
  // so the first player's values are exactly 4sx.
  const Int contradiction = 1025;
  for (int s = 0; s <= m; ++s)
    CHECK(first.query(contradiction, s) == Int(4) * s * contradiction);

  // Ordinal 4 = the single clause (x1 or x2 or x1): satisfied by assignments
  // 1, 2, 3, so quantities 1..3 carry the marker and the grand bundle does not
  // (quantity m reads as assignment 0).
  CHECK(first.query(Int(4), 1) == 16 + 1);
  CHECK(first.query(Int(4), 2) == 32 + 1);
  CHECK(first.query(Int(4), 3) == 48 + 1);
  CHECK(first.query(Int(4), 4) == 64);

  // The second player never sees the marker.
  for (int s = 0; s <= m; ++s) CHECK(second.query(Int(4), s) == 16 * s);

  // Both families are properly ordered on an enumerable slice.
  CHECK(!validate_domain(first.prefix(40)));
  CHECK(!validate_domain(second.prefix(40)));

  CHECK_THROWS_AS(gen_sat_twoplayer_domains(5), CapacityError);
}

TEST_CASE("payment-hardness rule hands out the floor plus the satisfiability bump") {
  // Satisfied exactly by assignment 2: (not x1) and (x2).
  CnfFormula only_two{2, {{1, 1, 1}, {2, 2, 2}}};
  PaymentHardnessRule rule = gen_payment_hardness_instance(2, only_two);
  CHECK(rule.m == 4);

  CHECK(rule.alloc(Rat(0)) == Allocation{0, 0});
  CHECK(rule.alloc(Rat(4)) == Allocation{4, 0});
  CHECK(rule.alloc(Rat(2)) == Allocation{3, 0});
  CHECK(rule.alloc(Rat(1)) == Allocation{1, 0});
  CHECK(rule.alloc(Rat(3)) == Allocation{3, 0});
  CHECK(rule.alloc(Rat(5, 2)) == Allocation{3, 0});
  CHECK(rule.alloc(Rat(3, 2)) == Allocation{1, 0});

  // Unsatisfiable formula: the rule is the plain floor everywhere.
  CnfFormula contradiction{2, {{0, 0, 0}, {1, 1, 1}}};
  PaymentHardnessRule flat = gen_payment_hardness_instance(2, contradiction);
  for (int z = 0; z <= 4; ++z) CHECK(flat.alloc(Rat(z)) == Allocation{z, 0});
}

TEST_CASE("no-sketch family matches the hand-evaluated table") {
  Domain d16 = gen_nosketch_domain(16);
  CHECK(d16.size() == 4);
  CHECK(d16.query(0, 16) == 16);
  CHECK(d16.query(0, 12) == 0);
  CHECK(d16.query(0, 13) == 2);
  CHECK(d16.query(0, 15) == 8);
  CHECK(d16.query(1, 8) == 0);
  CHECK(d16.query(1, 12) == 16);
  CHECK(d16.query(1, 16) == 32);
  CHECK(d16.query(3, 16) == 64);  // m^2 / log2(m)

  Domain d8 = gen_nosketch_domain(8);
  CHECK(d8.size() == 2);
  CHECK(d8.query(0, 5) == 0);
  CHECK(d8.query(0, 8) == 8);
  CHECK(!validate_domain(d8));

  CHECK(!validate_domain(gen_nosketch_domain(32)));

  CHECK_THROWS_AS(gen_nosketch_domain(12), std::invalid_argument);
  CHECK_THROWS_AS(gen_nosketch_domain(2), std::invalid_argument);
}
