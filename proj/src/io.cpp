#include "mua/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "mua/generators.hpp"

namespace mua {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what, const std::string& why) {
  throw std::invalid_argument(what + ": " + why);
}

std::int64_t small_int_from_json(const json& j, const std::string& what,
                                 std::int64_t lo, std::int64_t hi) {
  if (!j.is_number_integer()) bad(what, "expected an integer");
  const std::int64_t v = j.get<std::int64_t>();
  if (v < lo || v > hi)
    bad(what, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                  ", " + std::to_string(hi) + "]");
  return v;
}

std::string side_from_params(const json& params, const std::string& what) {
  if (!params.contains("side")) bad(what, "missing \"side\"");
  const json& side = params.at("side");
  if (!side.is_string() || (side != "A" && side != "B"))
    bad(what, "\"side\" must be \"A\" or \"B\"");
  return side.get<std::string>();
}

Domain build_generator_domain(const DomainSpec& spec, int m) {
  const std::string what = "domain generator \"" + spec.generator + "\"";
  const json& params = spec.params.is_null() ? json::object() : spec.params;
  if (!params.is_object()) bad(what, "params must be an object");

  if (spec.generator == "random_sc") {
    reject_unknown_keys(params, {"seed", "size", "max_marginal", "steps"}, what);
    if (!params.contains("seed") || !params.contains("size") ||
        !params.contains("max_marginal"))
      bad(what, "needs seed, size, max_marginal");
    if (!params.at("seed").is_number_unsigned() && !params.at("seed").is_number_integer())
      bad(what, "seed must be an integer");
    const auto seed = params.at("seed").get<std::uint64_t>();
    const int size = static_cast<int>(small_int_from_json(params.at("size"),
                                                          what + " size", 1, 1 << 20));
    const auto max_marginal = small_int_from_json(
        params.at("max_marginal"), what + " max_marginal", 0,
        std::numeric_limits<std::int32_t>::max());
    if (params.contains("steps")) {
      const json& steps_json = params.at("steps");
      if (!steps_json.is_array()) bad(what, "steps must be an array");
      KMindedStructure steps;
      for (const json& s : steps_json)
        steps.steps.push_back(
            static_cast<int>(small_int_from_json(s, what + " step", 1, m)));
      return gen_random_k_minded(seed, size, m, steps, max_marginal);
    }
    return gen_random_single_crossing(seed, size, m, max_marginal);
  }

  if (spec.generator == "separation") {
    reject_unknown_keys(params, {"bits", "side"}, what);
    if (!params.contains("bits")) bad(what, "missing \"bits\"");
    const int bits =
        static_cast<int>(small_int_from_json(params.at("bits"), what + " bits", 2, 20));
    if ((1 << bits) != m) bad(what, "bits inconsistent with the item count");
    auto pair = gen_separation_domains(bits);
    return side_from_params(params, what) == "A" ? pair.first : pair.second;
  }

  if (spec.generator == "sat2p") {
    reject_unknown_keys(params, {"vars", "side"}, what);
    if (!params.contains("vars")) bad(what, "missing \"vars\"");
    const int vars =
        static_cast<int>(small_int_from_json(params.at("vars"), what + " vars", 1, 20));
    if ((1 << vars) != m) bad(what, "vars inconsistent with the item count");
    auto pair = gen_sat_twoplayer_domains(vars);
    return side_from_params(params, what) == "A" ? pair.first : pair.second;
  }

  if (spec.generator == "payment_hardness") {
    reject_unknown_keys(params, {"vars", "formula"}, what);
    if (!params.contains("vars")) bad(what, "missing \"vars\"");
    const int vars =
        static_cast<int>(small_int_from_json(params.at("vars"), what + " vars", 1, 20));
    if ((1 << vars) != m) bad(what, "vars inconsistent with the item count");
    if (params.contains("formula")) {
      const Int ordinal = int_from_json(params.at("formula"), what + " formula");
      formula_from_ordinal(vars, ordinal);  // range check only
    }
    return gen_scalar_domain(m, m + 1);
  }

  if (spec.generator == "nosketch") {
    reject_unknown_keys(params, {}, what);
    return gen_nosketch_domain(m);
  }

  bad(what, "unknown generator name");
}

}  // namespace

json int_to_json(const Int& value) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (value >= lo && value <= hi) return value.convert_to<std::int64_t>();
  return value.str();
}

Int int_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      bad(what, "malformed integer string \"" + j.get<std::string>() + "\"");
    }
  }
  bad(what, "expected an integer or a decimal string");
}

void reject_unknown_keys(const json& object,
                         const std::vector<std::string>& allowed,
                         const std::string& what) {
  if (!object.is_object()) bad(what, "expected an object");
  for (const auto& item : object.items())
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      bad(what, "unknown key \"" + item.key() + "\"");
}

InstanceSpec parse_instance_json(const json& j) {
  reject_unknown_keys(j, {"m", "players"}, "instance");
  if (!j.contains("m") || !j.contains("players"))
    bad("instance", "needs \"m\" and \"players\"");
  InstanceSpec spec;
  spec.m = static_cast<int>(small_int_from_json(j.at("m"), "instance m", 0, 1 << 20));
  const json& players = j.at("players");
  if (!players.is_array() || players.empty())
    bad("instance", "\"players\" must be a non-empty array");
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string what = "player " + std::to_string(i);
    const json& pj = players.at(i);
    reject_unknown_keys(pj, {"domain", "report"}, what);
    if (!pj.contains("domain") || !pj.contains("report"))
      bad(what, "needs \"domain\" and \"report\"");
    PlayerSpec player;
    player.report = int_from_json(pj.at("report"), what + " report");
    if (player.report < 0) bad(what, "report must be non-negative");
    const json& dj = pj.at("domain");
    if (!dj.is_object() || !dj.contains("kind")) bad(what, "domain needs a \"kind\"");
    const json& kind = dj.at("kind");
    if (kind == "explicit") {
      reject_unknown_keys(dj, {"kind", "valuations"}, what + " domain");
      if (!dj.contains("valuations")) bad(what, "explicit domain needs \"valuations\"");
      const json& vals = dj.at("valuations");
      if (!vals.is_array() || vals.empty())
        bad(what, "\"valuations\" must be a non-empty array");
      player.domain.kind = DomainSpec::Kind::Explicit;
      for (const json& vj : vals) {
        if (!vj.is_array() || vj.size() != static_cast<std::size_t>(spec.m) + 1)
          bad(what, "each valuation must list m+1 values");
        Valuation v;
        v.m = spec.m;
        for (const json& x : vj)
          v.values.push_back(int_from_json(x, what + " value"));
        if (auto why = v.invalid_reason()) bad(what, *why);
        player.domain.valuations.push_back(std::move(v));
      }
    } else if (kind == "generator") {
      reject_unknown_keys(dj, {"kind", "name", "params"}, what + " domain");
      if (!dj.contains("name") || !dj.at("name").is_string())
        bad(what, "generator domain needs a \"name\"");
      player.domain.kind = DomainSpec::Kind::Generator;
      player.domain.generator = dj.at("name").get<std::string>();
      player.domain.params = dj.contains("params") ? dj.at("params") : json::object();
      if (!player.domain.params.is_object()) bad(what, "\"params\" must be an object");
    } else {
      bad(what, "domain kind must be \"explicit\" or \"generator\"");
    }
    spec.players.push_back(std::move(player));
  }
  return spec;
}

json instance_to_json(const InstanceSpec& spec) {
  json players = json::array();
  for (const auto& player : spec.players) {
    json dj;
    if (player.domain.kind == DomainSpec::Kind::Explicit) {
      json vals = json::array();
      for (const auto& v : player.domain.valuations) {
        json vj = json::array();
        for (const auto& x : v.values) vj.push_back(int_to_json(x));
        vals.push_back(std::move(vj));
      }
      dj = json{{"kind", "explicit"}, {"valuations", std::move(vals)}};
    } else {
      dj = json{{"kind", "generator"},
                {"name", player.domain.generator},
                {"params", player.domain.params.is_null() ? json::object()
                                                          : player.domain.params}};
    }
    players.push_back(json{{"domain", std::move(dj)},
                           {"report", int_to_json(player.report)}});
  }
  return json{{"m", spec.m}, {"players", std::move(players)}};
}

AuctionInstance build_instance(const InstanceSpec& spec) {
  AuctionInstance instance;
  instance.m = spec.m;
  for (const auto& player : spec.players) {
    Domain d = player.domain.kind == DomainSpec::Kind::Explicit
                   ? Domain::from_valuations(spec.m, player.domain.valuations)
                   : build_generator_domain(player.domain, spec.m);
    instance.domains.push_back(std::move(d));
    instance.reports.push_back(player.report);
  }
  if (auto why = instance.invalid_reason()) bad("instance", *why);
  return instance;
}

SingleMindedInstance build_single_minded(const InstanceSpec& spec) {
  SingleMindedInstance instance;
  instance.m = spec.m;
  AuctionInstance generic = build_instance(spec);
  for (int i = 0; i < generic.n(); ++i) {
    const std::string what = "player " + std::to_string(i);
    const Domain& d = generic.domains[static_cast<std::size_t>(i)];
    const int size = d.size_int("single-minded domain");
    std::vector<SingleMindedBid> bids;
    for (int t = 0; t < size; ++t) {
      Valuation v = d.materialize(t);
      // A single-minded member jumps once: zero below some quantity, constant
      // at and above it.
      int q = spec.m;  // all-zero members demand the grand bundle by convention
      for (int s = 1; s <= spec.m; ++s)
        if (v.value(s) > 0) {
          q = s;
          break;
        }
      for (int s = q; s <= spec.m; ++s)
        if (v.value(s) != v.value(q))
          bad(what, "member " + std::to_string(t) + " is not single-minded");
      bids.push_back(SingleMindedBid{v.value(spec.m), q});
    }
    instance.domains.push_back(std::move(bids));
    const Int& report = generic.reports[static_cast<std::size_t>(i)];
    if (report >= size) bad(what, "report outside the bid family");
    instance.reports.push_back(report.convert_to<int>());
  }
  return instance;
}

InstanceSpec load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("instance file", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    bad("instance file", std::string("JSON parse error: ") + e.what());
  }
  return parse_instance_json(j);
}

void save_instance_file(const std::string& path, const InstanceSpec& spec) {
  std::ofstream out(path);
  if (!out) bad("instance file", "cannot write " + path);
  out << instance_to_json(spec).dump(2) << "\n";
}

DomainSpec explicit_spec(const Domain& domain) {
  DomainSpec spec;
  spec.kind = DomainSpec::Kind::Explicit;
  spec.valuations = domain.materialize_all();
  return spec;
}

}  // namespace mua
