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

#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cplab/rng.hpp"

namespace cplab::protect {

// nullopt is a bottom answer, which Ver always rejects.
using Answer = std::optional<uint64_t>;
// Classical circuit C: n_in input bits to n_out output bits.
using Circuit = std::function<uint64_t(uint64_t)>;
// Punctured circuit; nullopt where the key cannot evaluate.
using PuncturedCircuit = std::function<std::optional<uint64_t>(uint64_t)>;
// Answers circuit queries made during Eval.
using Oracle = std::function<std::optional<uint64_t>(uint64_t)>;

// k = (C, aux, Q_rel).
struct SchemeKey {
  Circuit C;
  nlohmann::json aux;
  std::function<uint64_t(uint64_t)> q_rel;
};

// Output of the setup interaction, collapsed to a one-shot sampler.
struct SchemeInstance {
  SchemeKey key;
  std::any st;  // challenger state, opaque to adversaries
};

struct ChallengePair {
  uint64_t ak = 0;  // answer key
  uint64_t ch = 0;  // challenge
};

class MalleablePuncturableScheme {
 public:
  virtual ~MalleablePuncturableScheme() = default;

  virtual std::string name() const = 0;
  virtual int input_bits() const = 0;
  virtual int output_bits() const = 0;
  virtual double p_triv() const = 0;
  // Declared lower bound on the min-entropy of D_inp, in bits.
  virtual double input_min_entropy() const = 0;

  virtual SchemeInstance chal(Rng& rng) const = 0;
  // D_inp(st).
  virtual uint64_t sample_input(const std::any& st, Rng& rng) const = 0;
  virtual ChallengePair samp_ch_from_inp(const std::any& st, uint64_t x, Rng& rng) const = 0;
  ChallengePair samp_ch(const std::any& st, Rng& rng) const { return samp_ch_from_inp(st, sample_input(st, rng), rng); }
  // Every (challenge pair, probability) of SampCh(st); used to build
  // threshold measurements over the challenge distribution.
  virtual std::vector<std::pair<ChallengePair, double>> challenge_distribution(const std::any& st) const = 0;

  virtual bool ver(uint64_t ak, const Answer& ans) const = 0;
  virtual PuncturedCircuit mall_punc(const std::any& st, uint64_t x) const = 0;

  // Eval^C(aux, z) with circuit queries answered by `oracle`.
  virtual Answer eval(const nlohmann::json& aux, uint64_t z, const Oracle& oracle) const = 0;
  // When Eval makes exactly one query Q(z) and returns its answer, the
  // queried input; otherwise nullopt.
  virtual std::optional<uint64_t> direct_query(const nlohmann::json& aux, uint64_t z) const = 0;

  // Samples a challenge from the punctured key alone; schemes without a
  // public challenge distribution return nullopt.
  virtual std::optional<uint64_t> resample_challenge(const PuncturedCircuit&, const nlohmann::json&, Rng&) const {
    return std::nullopt;
  }

  // Meaningfulness algorithm B(k, ch).
  Answer meaningful_answer(const SchemeKey& k, uint64_t ch) const;
};

constexpr int kMaxExampleInputBits = 12;
constexpr int kMaxOutputBits = 62;

// C = PRF(K_F, .), Q_rel = identity, D_inp uniform, ch = x, ak = C(x),
// Ver = equality, MallPunc = the PRF key punctured at x, p_triv = 2^-n_out.
class PrfEvalScheme final : public MalleablePuncturableScheme {
 public:
  PrfEvalScheme(int n_in, int n_out, int security_bits = 128);

  std::string name() const override { return "prf-eval"; }
  int input_bits() const override { return n_in_; }
  int output_bits() const override { return n_out_; }
  double p_triv() const override;
  double input_min_entropy() const override { return n_in_; }

  SchemeInstance chal(Rng& rng) const override;
  uint64_t sample_input(const std::any& st, Rng& rng) const override;
  ChallengePair samp_ch_from_inp(const std::any& st, uint64_t x, Rng& rng) const override;
  std::vector<std::pair<ChallengePair, double>> challenge_distribution(const std::any& st) const override;
  bool ver(uint64_t ak, const Answer& ans) const override { return ans && *ans == ak; }
  PuncturedCircuit mall_punc(const std::any& st, uint64_t x) const override;
  Answer eval(const nlohmann::json& aux, uint64_t z, const Oracle& oracle) const override;
  std::optional<uint64_t> direct_query(const nlohmann::json&, uint64_t z) const override { return z; }
  std::optional<uint64_t> resample_challenge(const PuncturedCircuit&, const nlohmann::json&, Rng& rng) const override;

 private:
  int n_in_;
  int n_out_;
  int security_bits_;
};

// Registered scheme names: "prf-eval".
std::vector<std::string> scheme_names();
std::unique_ptr<MalleablePuncturableScheme> make_scheme(const std::string& name, int n_in, int n_out);

}  // namespace cplab::protect
