#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mua/domain.hpp"

namespace mua {

// Instance files are JSON:
//   {"m": int,
//    "players": [{"domain": <domain>, "report": int-or-decimal-string}, ...]}
// where <domain> is either
//   {"kind": "explicit", "valuations": [[0, ...], ...]}
// or
//   {"kind": "generator", "name": str, "params": {...}}.
// Unknown keys are rejected everywhere. Integers too wide for int64 are
// written as decimal strings; both spellings parse.
//
// Generator names and their params:
//   random_sc         {"seed": u64, "size": int, "max_marginal": int,
//                      "steps": [int, ...] (optional)}
//   separation        {"bits": int, "side": "A"|"B"}
//   sat2p             {"vars": int, "side": "A"|"B"}
//   payment_hardness  {"vars": int, "formula": ordinal}
//   nosketch          {}

struct DomainSpec {
  enum class Kind { Explicit, Generator };
  Kind kind = Kind::Explicit;
  std::vector<Valuation> valuations;  // Kind::Explicit
  std::string generator;              // Kind::Generator
  nlohmann::json params;              // Kind::Generator
};

struct PlayerSpec {
  DomainSpec domain;
  Int report = 0;
};

struct InstanceSpec {
  int m = 0;
  std::vector<PlayerSpec> players;
};

// Integer <-> JSON with the wide-value string fallback.
nlohmann::json int_to_json(const Int& value);
Int int_from_json(const nlohmann::json& j, const std::string& what);

// Rejects objects carrying keys outside `allowed` (missing keys are the
// callers' concern). Throws std::invalid_argument naming the offender.
void reject_unknown_keys(const nlohmann::json& object,
                         const std::vector<std::string>& allowed,
                         const std::string& what);

InstanceSpec parse_instance_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const InstanceSpec& spec);

// Instantiates the domains (running generators as needed) and pairs them with
// the reports. Validates shapes and report ranges.
AuctionInstance build_instance(const InstanceSpec& spec);

// Reinterprets an instance whose members are all single step functions as
// single-minded bids; throws std::invalid_argument when some member is not.
SingleMindedInstance build_single_minded(const InstanceSpec& spec);

InstanceSpec load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const InstanceSpec& spec);

// Explicit snapshot of a whole domain (used when emitting generated files).
DomainSpec explicit_spec(const Domain& domain);

}  // namespace mua
