// Command-line surface: instance generation, mechanism execution, payments,
// and verification suites. All output is JSON; rationals are always "p/q".
// Exit codes: 0 success, 1 property failure, 2 usage/input error, 3 capacity.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mua/domain.hpp"
#include "mua/generators.hpp"
#include "mua/io.hpp"
#include "mua/mechanism.hpp"
#include "mua/payments.hpp"
#include "mua/rounding.hpp"
#include "mua/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

mua::Rat parse_epsilon(const std::string& text) {
  auto parsed = mua::parse_rational(text);
  if (!parsed || *parsed <= 0 || *parsed > 1)
    throw std::invalid_argument(
        "epsilon must be a rational in (0, 1], written as p/q");
  return *parsed;
}

// Deterministic draw in [0, bound); plain modulo (bias immaterial here).
mua::Int draw_below(std::mt19937_64& rng, const mua::Int& bound) {
  if (bound <= 1) return 0;
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  mua::Int acc = 0;
  for (unsigned filled = 0; filled < bits + 64; filled += 64)
    acc = (acc << 64) | mua::Int(rng());
  return acc % bound;
}

json violation_json(const mua::ViolationReport& report) {
  json witness = json::array();
  for (const auto& x : report.witness) witness.push_back(mua::int_to_json(x));
  return json{{"kind", mua::kind_name(report.kind)},
              {"witness", std::move(witness)},
              {"detail", report.detail}};
}

// --------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string name;
  std::string out;
  std::uint64_t seed = 1;
  int m = 8;
  int n = 2;
  int size = 4;
  std::int64_t max_marginal = 100;
  int steps = 0;  // 0 = values may change at every quantity
  int bits = 3;
  int vars = 2;
};

int cmd_gen(const GenArgs& a) {
  mua::InstanceSpec spec;
  std::mt19937_64 rng(a.seed);

  if (a.name == "random_sc") {
    if (a.n < 1 || a.size < 1 || a.m < 1 || a.steps < 0 || a.steps > a.m)
      throw std::invalid_argument("gen random_sc: bad dimensions");
    spec.m = a.m;
    for (int i = 0; i < a.n; ++i) {
      const std::uint64_t domain_seed = rng();
      mua::Domain d;
      if (a.steps > 0) {
        std::vector<int> pool(static_cast<std::size_t>(a.m));
        std::iota(pool.begin(), pool.end(), 1);
        for (std::size_t j = pool.size() - 1; j > 0; --j)
          std::swap(pool[j], pool[static_cast<std::size_t>(rng() % (j + 1))]);
        mua::KMindedStructure ks;
        ks.steps.assign(pool.begin(), pool.begin() + a.steps);
        std::sort(ks.steps.begin(), ks.steps.end());
        d = mua::gen_random_k_minded(domain_seed, a.size, a.m, ks, a.max_marginal);
      } else {
        d = mua::gen_random_single_crossing(domain_seed, a.size, a.m, a.max_marginal);
      }
      mua::PlayerSpec player;
      player.domain = mua::explicit_spec(d);
      player.report = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(a.size));
      spec.players.push_back(std::move(player));
    }
  } else if (a.name == "separation") {
    mua::gen_separation_domains(a.bits);  // validates the range
    const int m = 1 << a.bits;
    spec.m = m;
    for (const char* side : {"A", "B"}) {
      mua::PlayerSpec player;
      player.domain.kind = mua::DomainSpec::Kind::Generator;
      player.domain.generator = "separation";
      player.domain.params = json{{"bits", a.bits}, {"side", side}};
      player.report = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m));
      spec.players.push_back(std::move(player));
    }
  } else if (a.name == "sat2p") {
    mua::gen_sat_twoplayer_domains(a.vars);  // enforces the family-size cap
    const int m = 1 << a.vars;
    spec.m = m;
    const mua::Int bound = mua::Int(1)
                           << static_cast<unsigned>(mua::clause_universe_size(a.vars));
    const mua::Int ordinal = draw_below(rng, bound);
    for (const char* side : {"A", "B"}) {
      mua::PlayerSpec player;
      player.domain.kind = mua::DomainSpec::Kind::Generator;
      player.domain.generator = "sat2p";
      player.domain.params = json{{"vars", a.vars}, {"side", side}};
      player.report = ordinal;
      spec.players.push_back(std::move(player));
    }
  } else if (a.name == "payment_hardness") {
    if (a.vars < 1 || a.vars > 10)
      throw std::invalid_argument("gen payment_hardness: vars must be in 1..10");
    const int m = 1 << a.vars;
    spec.m = m;
    const mua::Int bound = mua::Int(1)
                           << static_cast<unsigned>(mua::clause_universe_size(a.vars));
    const mua::Int ordinal = draw_below(rng, bound);
    mua::PlayerSpec player;
    player.domain.kind = mua::DomainSpec::Kind::Generator;
    player.domain.generator = "payment_hardness";
    player.domain.params = json{{"vars", a.vars}, {"formula", mua::int_to_json(ordinal)}};
    player.report = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m + 1));
    spec.players.push_back(std::move(player));
  } else if (a.name == "nosketch") {
    mua::Domain d = mua::gen_nosketch_domain(a.m);
    spec.m = a.m;
    mua::PlayerSpec player;
    player.domain = mua::explicit_spec(d);
    player.report =
        static_cast<std::int64_t>(rng() % d.size().convert_to<std::uint64_t>());
    spec.players.push_back(std::move(player));
  } else {
    throw std::invalid_argument("gen: unknown generator \"" + a.name + "\"");
  }

  if (a.out.empty())
    emit(mua::instance_to_json(spec), "");
  else
    mua::save_instance_file(a.out, spec);
  return 0;
}

// --------------------------------------------------------------------------
// shared mechanism plumbing for solve / pay / verify

struct GenericRule {
  mua::AuctionInstance view;  // domains + reports as the payment schemes see them
  mua::AllocFn alloc;
};

GenericRule make_rule(const mua::AuctionInstance& instance,
                      const std::string& mechanism, const mua::Rat& epsilon) {
  GenericRule rule;
  rule.view = instance;
  if (mechanism == "kminded") {
    auto step_sets = std::make_shared<std::vector<mua::KMindedStructure>>();
    for (const auto& d : instance.domains) step_sets->push_back(mua::derive_step_set(d));
    rule.alloc = [instance, step_sets, epsilon](const std::vector<mua::Int>& reports) {
      mua::AuctionInstance probe = instance;
      probe.reports = reports;
      return mua::fptas_k_minded(probe, *step_sets, epsilon).allocation;
    };
  } else if (mechanism == "general") {
    auto sketches = std::make_shared<std::vector<mua::Sketch>>();
    const mua::Rat sketch_eps = epsilon / (2 * instance.n());
    for (const auto& d : instance.domains)
      sketches->push_back(mua::build_sketch(d, sketch_eps));
    rule.alloc = [instance, sketches, epsilon](const std::vector<mua::Int>& reports) {
      mua::AuctionInstance probe = instance;
      probe.reports = reports;
      return mua::fptas_general_with_sketches(probe, *sketches, epsilon).allocation;
    };
  } else if (mechanism == "vcg") {
    rule.alloc = [instance](const std::vector<mua::Int>& reports) {
      mua::AuctionInstance probe = instance;
      probe.reports = reports;
      return mua::vcg_exact(probe).allocation;
    };
  } else {
    throw std::invalid_argument("unknown mechanism \"" + mechanism + "\"");
  }
  return rule;
}

GenericRule make_single_minded_rule(const mua::SingleMindedInstance& sm,
                                    const mua::Rat& epsilon) {
  GenericRule rule;
  rule.view.m = sm.m;
  for (int i = 0; i < sm.n(); ++i) {
    rule.view.domains.push_back(
        mua::single_minded_domain(sm.domains[static_cast<std::size_t>(i)], sm.m));
    rule.view.reports.push_back(sm.reports[static_cast<std::size_t>(i)]);
  }
  auto shared = std::make_shared<mua::SingleMindedInstance>(sm);
  rule.alloc = [shared, epsilon](const std::vector<mua::Int>& reports) {
    mua::SingleMindedInstance probe = *shared;
    for (std::size_t i = 0; i < reports.size(); ++i)
      probe.reports[i] = reports[i].convert_to<int>();
    return mua::fptas_single_minded(probe, epsilon).allocation;
  };
  return rule;
}

// --------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string in;
  std::string out;
  std::string mechanism = "general";
  std::string epsilon = "1/2";
  std::int64_t cap_profiles = 1'000'000;
};

int cmd_solve(const SolveArgs& a) {
  const mua::Rat eps = parse_epsilon(a.epsilon);
  mua::InstanceSpec spec = mua::load_instance_file(a.in);
  mua::MechanismResult result;
  if (a.mechanism == "kminded") {
    mua::AuctionInstance instance = mua::build_instance(spec);
    std::vector<mua::KMindedStructure> step_sets;
    for (const auto& d : instance.domains) step_sets.push_back(mua::derive_step_set(d));
    result = mua::fptas_k_minded(instance, step_sets, eps);
  } else if (a.mechanism == "general") {
    result = mua::fptas_general(mua::build_instance(spec), eps);
  } else if (a.mechanism == "singleminded") {
    result = mua::fptas_single_minded(mua::build_single_minded(spec), eps);
  } else if (a.mechanism == "vcg") {
    result = mua::vcg_exact(mua::build_instance(spec));
  } else {
    throw std::invalid_argument("unknown mechanism \"" + a.mechanism + "\"");
  }

  json out;
  json alloc = json::array();
  for (int q : result.allocation) alloc.push_back(q);
  out["allocation"] = std::move(alloc);
  out["welfare"] = mua::int_to_json(result.welfare);
  out["delta"] = json{{"base", result.diagnostics.delta.base},
                      {"exp", result.diagnostics.delta.exp}};
  try {
    mua::BruteForceResult opt =
        mua::brute_force_opt(mua::build_instance(spec), a.cap_profiles);
    const mua::Rat ratio = opt.welfare == 0
                               ? mua::Rat(1)
                               : mua::Rat(result.welfare) / mua::Rat(opt.welfare);
    out["ratio_vs_opt"] = mua::rat_to_string(ratio);
  } catch (const mua::CapacityError&) {
    out["ratio_vs_opt"] = nullptr;
  }
  emit(out, a.out);
  return 0;
}

// --------------------------------------------------------------------------
// pay

struct PayArgs {
  std::string in;
  std::string out;
  std::string mechanism = "general";
  std::string method = "threshold";
  std::string epsilon = "1/2";
  std::uint64_t seed = 1;
};

int cmd_pay(const PayArgs& a) {
  const mua::Rat eps = parse_epsilon(a.epsilon);
  mua::InstanceSpec spec = mua::load_instance_file(a.in);
  json out;
  std::vector<mua::Rat> payments;

  if (a.mechanism == "vcg") {
    mua::MechanismResult result = mua::vcg_exact(mua::build_instance(spec));
    payments = *result.payments;
    out["method"] = "vcg";
  } else {
    GenericRule rule;
    std::optional<mua::SingleMindedInstance> sm;
    if (a.mechanism == "singleminded") {
      sm = mua::build_single_minded(spec);
      rule = make_single_minded_rule(*sm, eps);
    } else {
      rule = make_rule(mua::build_instance(spec), a.mechanism, eps);
    }
    if (a.method == "threshold") {
      if (sm) {
        auto shared = std::make_shared<mua::SingleMindedInstance>(*sm);
        payments = mua::single_minded_payments(
            [shared, eps](const std::vector<int>& reports) {
              mua::SingleMindedInstance probe = *shared;
              probe.reports = reports;
              return mua::fptas_single_minded(probe, eps).allocation;
            },
            *sm);
      } else {
        payments = mua::threshold_payments(rule.alloc, rule.view);
      }
    } else if (a.method == "exact") {
      payments = mua::telescoping_payments(rule.alloc, rule.view);
    } else if (a.method == "sample") {
      std::mt19937_64 rng(a.seed);
      json drawn = json::array();
      for (int i = 0; i < rule.view.n(); ++i) {
        const mua::Int& t = rule.view.reports[static_cast<std::size_t>(i)];
        const mua::Int d = t == 0 ? mua::Int(0) : mua::Int(1) + draw_below(rng, t);
        payments.push_back(mua::sample_payment_estimator(rule.alloc, rule.view, i, d));
        drawn.push_back(mua::int_to_json(d));
      }
      out["drawn"] = std::move(drawn);
    } else {
      throw std::invalid_argument("unknown method \"" + a.method + "\"");
    }
    out["method"] = a.method;
  }

  json pay = json::array();
  for (const auto& p : payments) pay.push_back(mua::rat_to_string(p));
  out["payments"] = std::move(pay);
  emit(out, a.out);
  return 0;
}

// --------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  std::string in;
  std::string out;
  std::string mechanism = "general";
  std::string epsilon = "1/2";
  std::uint64_t seed = 1;
  int trials = 0;  // 0 = suite default
  int vars = 3;
  int bits = 3;
  int m = 16;
  int n = 2;
  int size = 3;
  int steps = 2;
  std::int64_t max_marginal = 30;
  std::int64_t cap_profiles = 1'000'000;
};

std::vector<mua::AuctionInstance> verify_corpus(const VerifyArgs& a, int trials) {
  std::vector<mua::AuctionInstance> corpus;
  if (!a.in.empty()) {
    corpus.push_back(mua::build_instance(mua::load_instance_file(a.in)));
    return corpus;
  }
  std::mt19937_64 rng(a.seed);
  for (int c = 0; c < trials; ++c) {
    mua::AuctionInstance instance;
    instance.m = a.m;
    for (int i = 0; i < a.n; ++i) {
      std::vector<int> pool(static_cast<std::size_t>(a.m));
      std::iota(pool.begin(), pool.end(), 1);
      for (std::size_t j = pool.size() - 1; j > 0; --j)
        std::swap(pool[j], pool[static_cast<std::size_t>(rng() % (j + 1))]);
      mua::KMindedStructure ks;
      ks.steps.assign(pool.begin(), pool.begin() + a.steps);
      std::sort(ks.steps.begin(), ks.steps.end());
      instance.domains.push_back(
          mua::gen_random_k_minded(rng(), a.size, a.m, ks, a.max_marginal));
      instance.reports.push_back(
          static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(a.size)));
    }
    corpus.push_back(std::move(instance));
  }
  return corpus;
}

int cmd_verify(const VerifyArgs& a) {
  json witnesses = json::array();
  bool pass = true;

  if (a.suite == "sc") {
    const int trials = a.trials > 0 ? a.trials : 20;
    std::vector<mua::Domain> targets;
    if (!a.in.empty()) {
      for (auto& d : mua::build_instance(mua::load_instance_file(a.in)).domains)
        targets.push_back(std::move(d));
    } else {
      std::mt19937_64 rng(a.seed);
      for (int c = 0; c < trials; ++c)
        targets.push_back(
            mua::gen_random_single_crossing(rng(), a.size, a.m, a.max_marginal));
    }
    for (const auto& d : targets)
      if (auto v = mua::check_single_crossing(d, a.cap_profiles)) {
        pass = false;
        witnesses.push_back(violation_json(*v));
      }
  } else if (a.suite == "mono" || a.suite == "ic") {
    const int trials = a.trials > 0 ? a.trials : 5;
    const mua::Rat eps = parse_epsilon(a.epsilon);
    for (const auto& instance : verify_corpus(a, trials)) {
      GenericRule rule;
      if (a.mechanism == "singleminded") {
        if (a.in.empty())
          throw std::invalid_argument(
              "verify " + a.suite + ": singleminded needs --in with bid domains");
        rule = make_single_minded_rule(
            mua::build_single_minded(mua::load_instance_file(a.in)), eps);
      } else {
        rule = make_rule(instance, a.mechanism, eps);
      }
      std::optional<mua::ViolationReport> violation;
      if (a.suite == "mono") {
        violation = mua::check_allocation_monotone(rule.alloc, rule.view.domains,
                                                   rule.view.m, a.cap_profiles);
      } else {
        mua::PaymentRuleFn payment;
        if (a.mechanism == "vcg") {
          auto base = rule.view;
          payment = [base](const std::vector<mua::Int>& profile, int player) {
            mua::AuctionInstance probe = base;
            probe.reports = profile;
            return (*mua::vcg_exact(probe).payments)[static_cast<std::size_t>(player)];
          };
        } else {
          auto alloc = rule.alloc;
          auto base = rule.view;
          payment = [alloc, base](const std::vector<mua::Int>& profile, int player) {
            mua::AuctionInstance probe = base;
            probe.reports = profile;
            return mua::threshold_payments(alloc, probe)[static_cast<std::size_t>(player)];
          };
        }
        violation = mua::check_incentive_compatible(rule.alloc, payment,
                                                    rule.view.domains, rule.view.m,
                                                    a.cap_profiles);
      }
      if (violation) {
        pass = false;
        witnesses.push_back(violation_json(*violation));
      }
    }
  } else if (a.suite == "sketch") {
    const int trials = a.trials > 0 ? a.trials : 20;
    const mua::Rat eps = parse_epsilon(a.epsilon);
    std::vector<mua::Domain> targets;
    if (!a.in.empty()) {
      for (auto& d : mua::build_instance(mua::load_instance_file(a.in)).domains)
        targets.push_back(std::move(d));
    } else {
      std::mt19937_64 rng(a.seed);
      for (int c = 0; c < trials; ++c)
        targets.push_back(
            mua::gen_random_single_crossing(rng(), a.size, a.m, a.max_marginal));
    }
    for (const auto& d : targets) {
      mua::Sketch sketch = mua::build_sketch(d, eps);
      if (auto v = mua::check_sketch_quality(d, sketch.quantities, eps, a.cap_profiles)) {
        pass = false;
        witnesses.push_back(violation_json(*v));
      }
    }
  } else if (a.suite == "nosketch") {
    mua::Domain d = mua::gen_nosketch_domain(a.m);
    if (auto v = mua::check_single_crossing(d, a.cap_profiles)) {
      pass = false;
      witnesses.push_back(violation_json(*v));
    }
    if (auto v = mua::check_no_small_sketch(d, mua::Rat(2), a.cap_profiles)) {
      pass = false;
      witnesses.push_back(violation_json(*v));
    }
  } else if (a.suite == "payhard") {
    const int trials = a.trials > 0 ? a.trials : 100;
    std::mt19937_64 rng(a.seed);
    const mua::Int bound = mua::Int(1)
                           << static_cast<unsigned>(mua::clause_universe_size(a.vars));
    for (int c = 0; c < trials; ++c) {
      const mua::Int ordinal = draw_below(rng, bound);
      const mua::CnfFormula formula = mua::formula_from_ordinal(a.vars, ordinal);
      const mua::PaymentHardnessOutcome outcome =
          mua::payment_hardness_check(a.vars, formula);
      if (!outcome.equal) {
        pass = false;
        witnesses.push_back(json{{"formula", mua::int_to_json(ordinal)},
                                 {"lhs", mua::rat_to_string(outcome.lhs)},
                                 {"rhs", mua::rat_to_string(outcome.rhs)}});
      }
    }
  } else if (a.suite == "gap") {
    const mua::SeparationInstance inst = mua::make_separation_instance(a.bits);
    int min_score = 2;
    for (int x = 0; x < inst.m; ++x)
      for (int y = 0; y < inst.m; ++y) {
        const int score =
            mua::separation_score(inst, x, y, mua::separation_greedy(inst, x, y));
        min_score = std::min(min_score, score);
      }
    mua::RuleFn greedy = [&inst](const std::vector<mua::Int>& profile) {
      return mua::separation_greedy(inst, profile[0].convert_to<int>(),
                                    profile[1].convert_to<int>());
    };
    auto violation = mua::check_tiebreak_monotone(
        greedy, {inst.first, inst.second}, inst.m, a.cap_profiles);
    pass = min_score >= 1 && violation.has_value();
    if (violation) witnesses.push_back(violation_json(*violation));
  } else {
    throw std::invalid_argument("unknown suite \"" + a.suite + "\"");
  }

  json report = {{"suite", a.suite},
                 {"status", pass ? "pass" : "fail"},
                 {"witnesses", std::move(witnesses)}};
  emit(report, a.out);
  return pass ? 0 : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Welfare-maximizing multi-unit auctions: mechanisms, payments, checks"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("name", gen_args.name,
                  "random_sc | separation | sat2p | payment_hardness | nosketch")
      ->required();
  gen->add_option("--seed", gen_args.seed, "Generator seed");
  gen->add_option("--m", gen_args.m, "Number of items");
  gen->add_option("--n", gen_args.n, "Number of players (random_sc)");
  gen->add_option("--size", gen_args.size, "Valuations per family (random_sc)");
  gen->add_option("--max-marginal", gen_args.max_marginal,
                  "Largest per-item marginal (random_sc)");
  gen->add_option("--steps", gen_args.steps,
                  "Quantities per family at which values may change; 0 = all");
  gen->add_option("--bits", gen_args.bits, "Scalar bits (separation)");
  gen->add_option("--vars", gen_args.vars, "Variables (sat2p, payment_hardness)");
  gen->add_option("--out", gen_args.out, "Output path (default stdout)");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Run a mechanism on an instance");
  solve->add_option("--in", solve_args.in, "Instance file")->required();
  solve->add_option("--mechanism", solve_args.mechanism,
                    "kminded | general | singleminded | vcg");
  solve->add_option("--epsilon", solve_args.epsilon, "Accuracy, as p/q");
  solve->add_option("--cap-profiles", solve_args.cap_profiles,
                    "Enumeration budget for the exact-optimum comparison");
  solve->add_option("--out", solve_args.out, "Output path (default stdout)");

  PayArgs pay_args;
  CLI::App* pay = app.add_subcommand("pay", "Compute payments for an instance");
  pay->add_option("--in", pay_args.in, "Instance file")->required();
  pay->add_option("--mechanism", pay_args.mechanism,
                  "kminded | general | singleminded | vcg");
  pay->add_option("--method", pay_args.method, "threshold | exact | sample");
  pay->add_option("--epsilon", pay_args.epsilon, "Accuracy, as p/q");
  pay->add_option("--seed", pay_args.seed, "Sampling seed (method=sample)");
  pay->add_option("--out", pay_args.out, "Output path (default stdout)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", verify_args.suite,
                     "sc | mono | ic | sketch | nosketch | payhard | gap")
      ->required();
  verify->add_option("--in", verify_args.in, "Instance file (default: seeded corpus)");
  verify->add_option("--mechanism", verify_args.mechanism,
                     "Mechanism under test (mono, ic)");
  verify->add_option("--epsilon", verify_args.epsilon, "Accuracy, as p/q");
  verify->add_option("--seed", verify_args.seed, "Corpus seed");
  verify->add_option("--trials", verify_args.trials, "Corpus size (suite default)");
  verify->add_option("--vars", verify_args.vars, "Variables (payhard)");
  verify->add_option("--bits", verify_args.bits, "Scalar bits (gap)");
  verify->add_option("--m", verify_args.m, "Items for corpus domains / nosketch");
  verify->add_option("--n", verify_args.n, "Players per corpus instance");
  verify->add_option("--size", verify_args.size, "Valuations per corpus family");
  verify->add_option("--steps", verify_args.steps, "Step quantities per corpus family");
  verify->add_option("--max-marginal", verify_args.max_marginal,
                     "Largest per-item marginal in corpus domains");
  verify->add_option("--cap-profiles", verify_args.cap_profiles,
                     "Exhaustive-check budget");
  verify->add_option("--out", verify_args.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(gen)) return cmd_gen(gen_args);
    if (app.got_subcommand(solve)) return cmd_solve(solve_args);
    if (app.got_subcommand(pay)) return cmd_pay(pay_args);
    if (app.got_subcommand(verify)) return cmd_verify(verify_args);
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const mua::CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mua::IntegrityError& e) {
    std::cerr << "integrity: " << e.what() << "\n";
    return kExitPropertyFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
}
