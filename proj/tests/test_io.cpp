#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mua/domain.hpp"
#include "mua/generators.hpp"
#include "mua/io.hpp"
#include "mua/numeric.hpp"

using namespace mua;
using json = nlohmann::json;

namespace {

json explicit_player(const std::vector<std::vector<int>>& rows, int report) {
  json vals = json::array();
  for (const auto& row : rows) {
    json vj = json::array();
    for (int x : row) vj.push_back(x);
    vals.push_back(std::move(vj));
  }
  return json{{"domain", {{"kind", "explicit"}, {"valuations", std::move(vals)}}},
              {"report", report}};
}

json generator_player(const std::string& name, json params, int report) {
  return json{
      {"domain", {{"kind", "generator"}, {"name", name}, {"params", std::move(params)}}},
      {"report", report}};
}

}  // namespace

TEST_CASE("integers round-trip through JSON, wide ones as decimal strings") {
  CHECK(int_to_json(Int(42)) == json(42));
  CHECK(int_to_json(Int(-7)) == json(-7));
  const std::int64_t top = std::numeric_limits<std::int64_t>::max();
  CHECK(int_to_json(Int(top)).is_number_integer());
  CHECK(int_to_json(Int(top) + 1).is_string());
  Int wide("123456789012345678901234567890");
  json wj = int_to_json(wide);
  REQUIRE(wj.is_string());
  CHECK(int_from_json(wj, "test") == wide);
  CHECK(int_from_json(json(42), "test") == 42);
  CHECK(int_from_json(json("42"), "test") == 42);
  CHECK(int_from_json(json("-13"), "test") == -13);
  CHECK_THROWS_AS(int_from_json(json("4x"), "test"), std::invalid_argument);
  CHECK_THROWS_AS(int_from_json(json(1.5), "test"), std::invalid_argument);
  CHECK_THROWS_AS(int_from_json(json(true), "test"), std::invalid_argument);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("10") == Rat(10));
  CHECK(parse_rational("-1/2") == Rat(-1, 2));
  CHECK(parse_rational("0/5") == Rat(0));
  CHECK(!parse_rational("7/0").has_value());
  CHECK(!parse_rational("x").has_value());
  CHECK(!parse_rational("1/2/3").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(rat_to_string(Rat(3, 4)) == "3/4");
  CHECK(rat_to_string(Rat(5)) == "5/1");
  CHECK(rat_to_string(Rat(0)) == "0/1");
}

TEST_CASE("unknown keys are rejected wherever they appear") {
  json base = {{"m", 2},
               {"players", json::array({explicit_player({{0, 1, 2}}, 0)})}};
  CHECK_NOTHROW(parse_instance_json(base));

  json top = base;
  top["extra"] = 1;
  CHECK_THROWS_AS(parse_instance_json(top), std::invalid_argument);

  json player_level = base;
  player_level["players"][0]["note"] = "hi";
  CHECK_THROWS_AS(parse_instance_json(player_level), std::invalid_argument);

  json domain_level = base;
  domain_level["players"][0]["domain"]["comment"] = "hi";
  CHECK_THROWS_AS(parse_instance_json(domain_level), std::invalid_argument);

  json gen = {{"m", 4},
              {"players", json::array({generator_player(
                              "random_sc",
                              {{"seed", 1}, {"size", 3}, {"max_marginal", 5}}, 0)})}};
  CHECK_NOTHROW(build_instance(parse_instance_json(gen)));

  json gen_domain_level = gen;
  gen_domain_level["players"][0]["domain"]["other"] = 1;
  CHECK_THROWS_AS(parse_instance_json(gen_domain_level), std::invalid_argument);

  json gen_params_level = gen;
  gen_params_level["players"][0]["domain"]["params"]["bogus"] = 1;
  CHECK_THROWS_AS(build_instance(parse_instance_json(gen_params_level)),
                  std::invalid_argument);

  json nosketch_params = {
      {"m", 8},
      {"players", json::array({generator_player("nosketch", {{"m", 8}}, 0)})}};
  CHECK_THROWS_AS(build_instance(parse_instance_json(nosketch_params)),
                  std::invalid_argument);
}

TEST_CASE("explicit instances survive an emit/parse round-trip") {
  json j = {{"m", 2},
            {"players", json::array({explicit_player({{0, 0, 0}, {0, 1, 3}}, 1),
                                     explicit_player({{0, 2, 2}}, 0)})}};
  InstanceSpec spec = parse_instance_json(j);
  CHECK(spec.m == 2);
  REQUIRE(spec.players.size() == 2);
  CHECK(spec.players[0].report == 1);
  CHECK(spec.players[0].domain.valuations[1].value(2) == 3);

  json emitted = instance_to_json(spec);
  InstanceSpec again = parse_instance_json(emitted);
  CHECK(instance_to_json(again) == emitted);

  AuctionInstance instance = build_instance(spec);
  CHECK(instance.m == 2);
  CHECK(instance.domains[0].query(Int(1), 2) == 3);
  CHECK(instance.domains[1].query(Int(0), 1) == 2);
}

TEST_CASE("explicit snapshots reproduce a generated domain") {
  Domain original = gen_random_single_crossing(9, 4, 5, 12);
  DomainSpec snap = explicit_spec(original);
  InstanceSpec spec;
  spec.m = 5;
  spec.players.push_back(PlayerSpec{snap, Int(2)});
  AuctionInstance instance = build_instance(spec);
  for (Int t = 0; t < 4; ++t)
    for (int s = 0; s <= 5; ++s)
      CHECK(instance.domains[0].query(t, s) == original.query(t, s));
}

TEST_CASE("every generator form builds the same domain as a direct call") {
  struct Case {
    json player;
    int m;
    Domain expect;
  };
  std::vector<KMindedStructure> no_steps;
  std::vector<Case> cases;
  cases.push_back({generator_player(
                       "random_sc",
                       {{"seed", 7}, {"size", 4}, {"max_marginal", 9}}, 1),
                   6, gen_random_single_crossing(7, 4, 6, 9)});
  cases.push_back({generator_player("random_sc",
                                    {{"seed", 7},
                                     {"size", 4},
                                     {"max_marginal", 9},
                                     {"steps", json::array({2, 5})}},
                                    1),
                   6, gen_random_k_minded(7, 4, 6, KMindedStructure{{2, 5}}, 9)});
  cases.push_back({generator_player("separation", {{"bits", 2}, {"side", "A"}}, 3),
                   4, gen_separation_domains(2).first});
  cases.push_back({generator_player("separation", {{"bits", 2}, {"side", "B"}}, 0),
                   4, gen_separation_domains(2).second});
  cases.push_back({generator_player("sat2p", {{"vars", 2}, {"side", "A"}}, 5),
                   4, gen_sat_twoplayer_domains(2).first});
  cases.push_back({generator_player("sat2p", {{"vars", 2}, {"side", "B"}}, 5),
                   4, gen_sat_twoplayer_domains(2).second});
  cases.push_back({generator_player("payment_hardness",
                                    {{"vars", 2}, {"formula", 4}}, 2),
                   4, gen_scalar_domain(4, 5)});
  cases.push_back({generator_player("nosketch", json::object(), 0), 16,
                   gen_nosketch_domain(16)});

  for (auto& c : cases) {
    json j = {{"m", c.m}, {"players", json::array({c.player})}};
    AuctionInstance instance = build_instance(parse_instance_json(j));
    const Domain& got = instance.domains[0];
    const int size = std::min(6, got.size_int("test"));
    for (Int t = 0; t < size; ++t)
      for (int s = 0; s <= c.m; ++s)
        CHECK(got.query(t, s) == c.expect.query(t, s));
  }
}

TEST_CASE("generator parameter validation") {
  auto build_one = [](const std::string& name, json params, int m) {
    json j = {{"m", m}, {"players", json::array({generator_player(name, params, 0)})}};
    return build_instance(parse_instance_json(j));
  };
  // Missing required params.
  CHECK_THROWS_AS(build_one("random_sc", {{"seed", 1}, {"size", 3}}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_one("separation", {{"side", "A"}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_one("separation", {{"bits", 2}, {"side", "C"}}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_one("sat2p", {{"side", "A"}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_one("payment_hardness", {{"formula", 0}}, 4),
                  std::invalid_argument);
  // The item count must match the generator's shape.
  CHECK_THROWS_AS(build_one("separation", {{"bits", 2}, {"side", "A"}}, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_one("payment_hardness", {{"vars", 2}}, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_one("nosketch", json::object(), 12), std::invalid_argument);
  // Formula ordinals are range-checked.
  CHECK_THROWS_AS(build_one("payment_hardness",
                            {{"vars", 2}, {"formula", "1048576"}}, 4),
                  std::out_of_range);
  CHECK_NOTHROW(build_one("payment_hardness", {{"vars", 2}, {"formula", "1048575"}}, 4));
  // Unknown generator names.
  CHECK_THROWS_AS(build_one("mystery", json::object(), 4), std::invalid_argument);
}

TEST_CASE("malformed instances are rejected with the offending part named") {
  CHECK_THROWS_AS(parse_instance_json(json{{"m", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_instance_json(json{{"m", 2}, {"players", json::array()}}),
      std::invalid_argument);

  // Ragged and non-monotone rows fail at parse time.
  json ragged = {{"m", 2}, {"players", json::array({explicit_player({{0, 1}}, 0)})}};
  CHECK_THROWS_AS(parse_instance_json(ragged), std::invalid_argument);
  json sagging = {{"m", 2},
                  {"players", json::array({explicit_player({{0, 2, 1}}, 0)})}};
  CHECK_THROWS_AS(parse_instance_json(sagging), std::invalid_argument);
  json nonzero = {{"m", 2},
                  {"players", json::array({explicit_player({{1, 1, 1}}, 0)})}};
  CHECK_THROWS_AS(parse_instance_json(nonzero), std::invalid_argument);

  json negative = {{"m", 2},
                   {"players", json::array({explicit_player({{0, 1, 2}}, 0)})}};
  negative["players"][0]["report"] = -1;
  CHECK_THROWS_AS(parse_instance_json(negative), std::invalid_argument);

  // Reports parse from decimal strings but must land inside the family.
  json strung = {{"m", 2},
                 {"players", json::array({explicit_player({{0, 1, 2}, {0, 2, 4}}, 0)})}};
  strung["players"][0]["report"] = "1";
  AuctionInstance ok = build_instance(parse_instance_json(strung));
  CHECK(ok.reports[0] == 1);
  strung["players"][0]["report"] = "2";
  CHECK_THROWS_AS(build_instance(parse_instance_json(strung)),
                  std::invalid_argument);
}

TEST_CASE("single-minded reinterpretation accepts steps and rejects slopes") {
  json good = {{"m", 3},
               {"players",
                json::array({explicit_player({{0, 0, 0, 0}, {0, 0, 5, 5}}, 1),
                             explicit_player({{0, 4, 4, 4}}, 0)})}};
  SingleMindedInstance sm = build_single_minded(parse_instance_json(good));
  CHECK(sm.m == 3);
  REQUIRE(sm.domains.size() == 2);
  CHECK(sm.domains[0][0].value == 0);
  CHECK(sm.domains[0][0].quantity == 3);  // all-zero members demand everything
  CHECK(sm.domains[0][1].value == 5);
  CHECK(sm.domains[0][1].quantity == 2);
  CHECK(sm.domains[1][0].value == 4);
  CHECK(sm.domains[1][0].quantity == 1);
  CHECK(sm.reports == std::vector<int>{1, 0});

  json sloped = {{"m", 2},
                 {"players", json::array({explicit_player({{0, 1, 2}}, 0)})}};
  CHECK_THROWS_AS(build_single_minded(parse_instance_json(sloped)),
                  std::invalid_argument);
}

TEST_CASE("instance files round-trip through disk") {
  const std::string path = "io_roundtrip_tmp.json";
  json j = {{"m", 4},
            {"players",
             json::array({generator_player(
                              "random_sc",
                              {{"seed", 3}, {"size", 3}, {"max_marginal", 7}}, 2),
                          explicit_player({{0, 1, 1, 1, 9}}, 0)})}};
  InstanceSpec spec = parse_instance_json(j);
  save_instance_file(path, spec);
  InstanceSpec loaded = load_instance_file(path);
  CHECK(instance_to_json(loaded) == instance_to_json(spec));
  AuctionInstance a = build_instance(spec);
  AuctionInstance b = build_instance(loaded);
  CHECK(a.domains[0].query(Int(1), 4) == b.domains[0].query(Int(1), 4));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_instance_file("definitely_missing_file.json"),
                  std::invalid_argument);
  const std::string broken = "io_broken_tmp.json";
  std::ofstream(broken) << "{not json";
  CHECK_THROWS_AS(load_instance_file(broken), std::invalid_argument);
  std::remove(broken.c_str());
}
