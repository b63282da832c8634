// Copyright 2026 The cplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cplab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cplab/ace.hpp"
#include "cplab/bits.hpp"
#include "cplab/errors.hpp"
#include "cplab/games.hpp"
#include "cplab/moe.hpp"
#include "cplab/prf.hpp"
#include "cplab/resampler.hpp"
#include "cplab/stats.hpp"
#include "cplab/quantum.hpp"
#include "cplab/scheme.hpp"
#include "cplab/threshold.hpp"

namespace cplab::cli {
namespace {

using nlohmann::json;

// Unknown registered names.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string command;
  uint64_t seed = kDefaultSeed;
  std::string output;
  int d = 8;
  int n = 6;
  int n_out = 8;
  uint64_t trials = 1000;
  double gamma = 0.1;
  double epsilon = 0.1;
  double delta = 0.05;
  double alpha = 0.05;
  int qubits = 2;
  uint64_t instances = 20;
  uint64_t support = 64;
  uint64_t sets = 20;
  int max_punctured = 8;
  std::string adversary;
  std::string scheme = "prf-eval";
  std::string dist = "uniform:48";
  std::string msg = "0";
};

class Emitter {
 public:
  explicit Emitter(std::ostream& os) : os_(os) {}
  void line(const json& j) { os_ << j.dump() << '\n'; }
  void trial(const std::string& game, const protect::TrialRecord& t, const json& params) {
    line({{"type", "trial"},
          {"game", game},
          {"trial", t.trial},
          {"outcome", t.outcome ? 1 : 0},
          {"side_outcomes", t.side_outcomes},
          {"detail", t.detail},
          {"params", params}});
  }
  void summary(uint64_t successes, uint64_t trials, const json& params, const json& extra = json::object()) {
    Interval ci = wilson_interval(successes, trials);
    json j{{"type", "summary"},
           {"rate", trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0},
           {"ci_low", ci.low},
           {"ci_high", ci.high},
           {"successes", successes},
           {"trials", trials},
           {"params", params}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    line(j);
  }

 private:
  std::ostream& os_;
};

void cap(bool ok, const std::string& message) {
  if (!ok) throw CapacityError(message);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

int emit_game(Emitter& em, const protect::GameResult& r, const std::vector<protect::TrialRecord>& records) {
  for (const auto& t : records) em.trial(r.game, t, r.params);
  json extra = r.summary.is_null() ? json::object() : r.summary;
  extra["side_rates"] = json::array();
  for (size_t s = 0; s < r.side_successes.size(); ++s) extra["side_rates"].push_back(r.side_rate(s));
  em.summary(r.successes, r.trials, r.params, extra);
  return kExitOk;
}

std::unique_ptr<protect::MalleablePuncturableScheme> scheme_of(const Config& c) {
  const auto names = protect::scheme_names();
  if (std::find(names.begin(), names.end(), c.scheme) == names.end()) {
    throw UsageError("unknown scheme '" + c.scheme + "'");
  }
  return protect::make_scheme(c.scheme, c.n, c.n_out);
}

void check_game_caps(const Config& c, int max_d, const std::string& module) {
  require(c.d >= 4 && c.d % 4 == 0, "protection-games: --d must be a positive multiple of 4");
  cap(c.d <= max_d, module + ": --d must be at most " + std::to_string(max_d));
  cap(c.n >= 1 && c.n <= protect::kMaxExampleInputBits, "protection-games: --n must lie in [1, 12]");
  require(c.trials >= 1, "--trials must be positive");
}

int cmd_moe(const Config& c, Emitter& em) {
  require(c.d >= 4 && c.d % 4 == 0, "protection-games: --d must be a positive multiple of 4");
  cap(c.d <= protect::kMaxCosetDim, "protection-games: --d must be at most 12");
  require(c.trials >= 1, "--trials must be positive");
  const auto names = protect::moe_adversary_names();
  const std::string adv_name = c.adversary.empty() ? "split-basis" : c.adversary;
  if (std::find(names.begin(), names.end(), adv_name) == names.end()) {
    throw UsageError("unknown MoE adversary '" + adv_name + "'");
  }
  Rng rng(c.seed);
  std::vector<protect::TrialRecord> records;
  auto r = protect::run_moe_game(c.d, protect::make_moe_adversary(adv_name), c.trials, rng,
                                 [&](const protect::TrialRecord& t) { records.push_back(t); });
  r.params["seed"] = c.seed;
  return emit_game(em, r, records);
}

protect::PirateAdversary pirate_of(const Config& c) {
  const auto names = protect::pirate_names();
  const std::string name = c.adversary.empty() ? "forwarding" : c.adversary;
  if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown pirate '" + name + "'");
  return protect::make_pirate(name);
}

int cmd_cp_game(const Config& c, Emitter& em) {
  check_game_caps(c, protect::kMaxCosetDim, "protection-games");
  cap(c.n_out >= 1 && c.n_out <= protect::kMaxGuessQubits, "protection-games: --n-out must lie in [1, 8]");
  auto scheme = scheme_of(c);
  auto pirate = pirate_of(c);
  Rng rng(c.seed);
  std::vector<protect::TrialRecord> records;
  auto r = protect::run_copy_protection_game(*scheme, pirate, c.d, c.trials, rng,
                                             [&](const protect::TrialRecord& t) { records.push_back(t); });
  r.params["seed"] = c.seed;
  return emit_game(em, r, records);
}

int cmd_strong_ap(const Config& c, Emitter& em) {
  check_game_caps(c, threshold::kMaxQubits, "threshold-measurements");
  cap(c.n_out >= 1 && c.n_out <= threshold::kMaxQubits, "threshold-measurements: --n-out must lie in [1, 8]");
  auto scheme = scheme_of(c);
  auto pirate = pirate_of(c);
  Rng rng(c.seed);
  std::vector<protect::TrialRecord> records;
  auto r = protect::run_strong_antipiracy_game(*scheme, pirate, c.d, c.gamma, c.trials, rng,
                                               [&](const protect::TrialRecord& t) { records.push_back(t); });
  r.params["seed"] = c.seed;
  return emit_game(em, r, records);
}

int cmd_ace_demo(const Config& c, Emitter& em) {
  cap(c.n >= 1 && c.n <= ace::kMaxMessageBits, "steg-ace: --n must lie in [1, 16]");
  require(c.epsilon > 0.0 && c.epsilon < 1.0, "steg-ace: --epsilon must lie in (0, 1)");
  require(c.trials >= 1, "--trials must be positive");
  uint64_t m = 0;
  try {
    m = std::stoull(c.msg, nullptr, 16);
  } catch (const std::exception&) {
    throw ParameterError("steg-ace: --msg must be hexadecimal");
  }
  require(m <= low_mask(c.n), "steg-ace: --msg wider than --n bits");
  SampleSource D = SampleSource::parse(c.dist);
  Rng rng(c.seed);
  ace::AceSecretKey sk = ace::setup(c.n, prf::kDefaultSecurityBits, rng, D.width());
  obf::Registry registry;
  ace::EncapKey ek = ace::gen_ek(sk, ace::Predicate::never(), registry, rng);
  ace::DecapKey dk = ace::gen_dk(sk, ace::Predicate::never(), registry, rng);
  json params{{"n", c.n}, {"dist", c.dist}, {"epsilon", c.epsilon}, {"msg", c.msg}, {"seed", c.seed}};
  uint64_t ok = 0;
  for (uint64_t t = 0; t < c.trials; ++t) {
    ace::StegResult s = ace::steg_enc(ek, m, D, c.epsilon, rng);
    std::optional<uint64_t> back = s.sample ? ace::steg_dec(dk, *s.sample) : std::nullopt;
    const bool good = back && *back == m;
    ok += good;
    em.line({{"type", "trial"},
             {"game", "ace-demo"},
             {"trial", t},
             {"outcome", good ? 1 : 0},
             {"status", s.status == ace::StegStatus::ok ? "ok" : s.status == ace::StegStatus::punctured ? "punctured"
                                                                                                        : "exhausted"},
             {"draws", s.draws},
             {"t_limit", s.t_limit},
             {"params", params}});
  }
  const double rate = static_cast<double>(ok) / static_cast<double>(c.trials);
  const double target = 1.0 - 2.0 * c.epsilon;
  em.summary(ok, c.trials, params, {{"roundtrip_target", target}, {"passed", rate >= target}});
  return rate >= target ? kExitOk : kExitPropertyFailure;
}

int cmd_resample_check(const Config& c, Emitter& em) {
  cap(c.support >= 1 && c.support <= 4096, "reverse-resampler: --support must lie in [1, 4096]");
  require(c.epsilon > 0.0 && c.epsilon < 1.0, "reverse-resampler: --epsilon must lie in (0, 1)");
  require(c.instances >= 1, "--instances must be positive");
  Rng rng(c.seed);
  json params{{"support", c.support}, {"epsilon", c.epsilon}, {"instances", c.instances}, {"seed", c.seed}};
  uint64_t pass = 0;
  for (uint64_t i = 0; i < c.instances; ++i) {
    std::vector<uint64_t> values(c.support);
    std::vector<double> weights(c.support);
    for (uint64_t k = 0; k < c.support; ++k) {
      values[k] = k;
      weights[k] = rng.uniform_open();
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    FiniteDistribution D(values, weights);
    const uint64_t labels = 1 + rng.below(std::max<uint64_t>(1, c.support / 2));
    std::vector<uint64_t> table(c.support);
    for (auto& y : table) y = rng.below(labels);
    resample::Fn f = [&table](uint64_t s) { return table[s]; };
    const uint64_t t_limit = resample::truncated_limit(c.epsilon, c.support);
    const double tv_inf = resample::exact_tv_distance(D, resample::infinite_law(D, f));
    const auto law = resample::truncated_law(D, f, t_limit);
    const double tv = resample::exact_tv_distance(D, law);
    const bool good = tv_inf < 1e-12 && tv <= c.epsilon && law.bottom <= c.epsilon;
    pass += good;
    em.line({{"type", "trial"},
             {"game", "resample-check"},
             {"trial", i},
             {"outcome", good ? 1 : 0},
             {"labels", labels},
             {"t_limit", t_limit},
             {"tv_infinite", tv_inf},
             {"tv_truncated", tv},
             {"bottom_rate", law.bottom},
             {"params", params}});
  }
  em.summary(pass, c.instances, params);
  return pass == c.instances ? kExitOk : kExitPropertyFailure;
}

int cmd_ti_check(const Config& c, Emitter& em) {
  cap(c.qubits >= 2 && c.qubits <= 4, "threshold-measurements: --qubits must lie in [2, 4]");
  require(c.epsilon > 0.0 && c.epsilon < 1.0 && c.delta > 0.0 && c.delta < 1.0 && c.alpha > 0.0,
          "threshold-measurements: epsilon, delta must lie in (0, 1) and alpha must be positive");
  require(c.instances >= 1, "--instances must be positive");
  Rng rng(c.seed);
  json params{{"qubits", c.qubits},   {"epsilon", c.epsilon}, {"delta", c.delta},
              {"alpha", c.alpha},     {"instances", c.instances}, {"seed", c.seed}};
  uint64_t pass = 0;
  for (uint64_t i = 0; i < c.instances; ++i) {
    const Eigen::Index dim = Eigen::Index{1} << c.qubits;
    auto fam = threshold::random_family(c.qubits, 1 + rng.below(8), rng);
    quantum::Matrix rho = quantum::random_density(dim, 1 + static_cast<Eigen::Index>(rng.below(static_cast<uint64_t>(dim))), rng);
    auto single = threshold::verify_single_ati(fam, rng.uniform(), c.epsilon, c.delta, rho);
    const int q1 = c.qubits / 2;
    auto f1 = threshold::random_family(q1, 1 + rng.below(5), rng);
    auto f2 = threshold::random_family(c.qubits - q1, 1 + rng.below(5), rng);
    auto multi = threshold::verify_multi_ati(f1, f2, rng.uniform(), rng.uniform(), c.epsilon, c.delta, rho);
    auto sim = threshold::verify_sim_ati(fam, rng.uniform(), c.epsilon, c.delta, c.alpha, rho, rng);
    const size_t violations = single.violations() + multi.violations() + sim.violations();
    pass += violations == 0;
    em.line({{"type", "trial"},
             {"game", "ti-check"},
             {"trial", i},
             {"outcome", violations == 0 ? 1 : 0},
             {"violations", json{{"single", single.violations()}, {"multi", multi.violations()}, {"sim", sim.violations()}}},
             {"params", params}});
  }
  em.summary(pass, c.instances, params);
  return pass == c.instances ? kExitOk : kExitPropertyFailure;
}

int cmd_prf_check(const Config& c, Emitter& em) {
  cap(c.n >= 1 && c.n <= 16, "puncturable-prf: --n must lie in [1, 16] for exhaustive checks");
  cap(c.max_punctured >= 0 && c.max_punctured <= 64, "puncturable-prf: --max-punctured must lie in [0, 64]");
  require(c.sets >= 1, "--sets must be positive");
  Rng rng(c.seed);
  json params{{"n", c.n}, {"sets", c.sets}, {"max_punctured", c.max_punctured}, {"seed", c.seed}};
  uint64_t pass = 0;
  const uint64_t domain = uint64_t{1} << c.n;
  for (uint64_t i = 0; i < c.sets; ++i) {
    prf::PrfKey key = prf::setup(prf::kDefaultSecurityBits, c.n, 32, rng);
    std::vector<uint64_t> S;
    const uint64_t size = std::min<uint64_t>(domain, rng.below(static_cast<uint64_t>(c.max_punctured) + 1));
    while (S.size() < size) {
      uint64_t x = rng.below(domain);
      if (std::find(S.begin(), S.end(), x) == S.end()) S.push_back(x);
    }
    auto punct = prf::puncture(key, S);
    uint64_t agree = 0, refused = 0;
    for (uint64_t x = 0; x < domain; ++x) {
      auto y = prf::punctured_eval_u64(punct, x);
      if (std::find(S.begin(), S.end(), x) != S.end()) {
        refused += !y.has_value();
      } else {
        agree += y && *y == prf::eval_u64(key, x);
      }
    }
    const bool good = agree == domain - S.size() && refused == S.size();
    pass += good;
    em.line({{"type", "trial"},
             {"game", "prf-check"},
             {"trial", i},
             {"outcome", good ? 1 : 0},
             {"punctured", S.size()},
             {"agree", agree},
             {"refused", refused},
             {"params", params}});
  }
  em.summary(pass, c.sets, params);
  return pass == c.sets ? kExitOk : kExitPropertyFailure;
}

std::optional<uint64_t> env_seed() {
  const char* s = std::getenv("CPLAB_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    return std::stoull(s, nullptr, 0);
  } catch (const std::exception&) {
    throw UsageError("CPLAB_SEED is not an integer");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"cplab: coset-state copy-protection toolkit"};
  app.require_subcommand(1);
  std::optional<uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "RNG seed (default: CPLAB_SEED or 1)");
  app.add_option("--output", c.output, "Write results to this file instead of stdout");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_flag, "RNG seed (default: CPLAB_SEED or 1)");
    sub->add_option("--output", c.output, "Write results to this file instead of stdout");
  };
  auto* moe = app.add_subcommand("moe", "Monogamy-of-entanglement splitting game");
  moe->add_option("--d", c.d, "Coset dimension");
  moe->add_option("--adversary", c.adversary, "split-basis | split-hadamard | split-state | split-state-hadamard");
  moe->add_option("--trials", c.trials, "Number of trials");
  add_common(moe);

  auto* cp = app.add_subcommand("cp-game", "Copy-protection game against a pirate");
  auto* sap = app.add_subcommand("strong-ap", "Strong anti-piracy game with threshold implementations");
  for (auto* sub : {cp, sap}) {
    sub->add_option("--d", c.d, "Coset dimension");
    sub->add_option("--n", c.n, "Scheme input bits");
    sub->add_option("--n-out", c.n_out, "Scheme output bits");
    sub->add_option("--scheme", c.scheme, "Scheme name");
    sub->add_option("--adversary", c.adversary, "forwarding | basis-cloner | hadamard-cloner");
    sub->add_option("--trials", c.trials, "Number of trials");
    add_common(sub);
  }
  sap->add_option("--gamma", c.gamma, "Threshold margin above p_triv");

  auto* acedemo = app.add_subcommand("ace-demo", "Steganographic encapsulation roundtrip");
  acedemo->add_option("--n", c.n, "Message bits");
  acedemo->add_option("--dist", c.dist, "uniform:<width> or a distribution file");
  acedemo->add_option("--epsilon", c.epsilon, "Truncation error");
  acedemo->add_option("--msg", c.msg, "Message in hex");
  acedemo->add_option("--trials", c.trials, "Number of roundtrips (default 1)");
  add_common(acedemo);

  auto* rs = app.add_subcommand("resample-check", "Exact laws of reverse resampling");
  rs->add_option("--support", c.support, "Support size of D");
  rs->add_option("--epsilon", c.epsilon, "Truncation error");
  rs->add_option("--instances", c.instances, "Random (D, f) pairs");
  add_common(rs);

  auto* ti = app.add_subcommand("ti-check", "Threshold implementation inequality suite");
  ti->add_option("--qubits", c.qubits, "Register qubits");
  ti->add_option("--epsilon", c.epsilon, "Approximation epsilon (default 0.05)");
  ti->add_option("--delta", c.delta, "Failure probability delta");
  ti->add_option("--alpha", c.alpha, "SimATI alpha");
  ti->add_option("--instances", c.instances, "Random instances");
  add_common(ti);

  auto* pc = app.add_subcommand("prf-check", "Exhaustive punctured PRF correctness");
  pc->add_option("--n", c.n, "Input bits (default 12)");
  pc->add_option("--sets", c.sets, "Random puncture sets");
  pc->add_option("--max-punctured", c.max_punctured, "Largest puncture set");
  add_common(pc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    auto env = env_seed();
    c.seed = seed_flag ? *seed_flag : env ? *env : kDefaultSeed;
    std::ofstream file;
    if (!c.output.empty()) {
      file.open(c.output, std::ios::binary | std::ios::trunc);
      if (!file) throw UsageError("cannot open output file '" + c.output + "'");
    }
    Emitter em(c.output.empty() ? out : file);
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    // Per-command defaults for fields shared between subcommands.
    auto unset = [sub](const char* flag) { return sub->count(flag) == 0; };
    if (name == "ace-demo" && unset("--trials")) c.trials = 1;
    if (name == "ti-check" && unset("--epsilon")) c.epsilon = 0.05;
    if (name == "prf-check" && unset("--n")) c.n = 12;
    if (name == "moe") return cmd_moe(c, em);
    if (name == "cp-game") return cmd_cp_game(c, em);
    if (name == "strong-ap") return cmd_strong_ap(c, em);
    if (name == "ace-demo") return cmd_ace_demo(c, em);
    if (name == "resample-check") return cmd_resample_check(c, em);
    if (name == "ti-check") return cmd_ti_check(c, em);
    return cmd_prf_check(c, em);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitUsage;  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cplab::cli
