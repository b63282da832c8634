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

#include "cplab/scheme.hpp"

#include <cmath>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"
#include "cplab/prf.hpp"

namespace cplab::protect {
namespace {

const prf::PrfKey& prf_state(const std::any& st) {
  const auto* key = std::any_cast<prf::PrfKey>(&st);
  if (!key) throw ParameterError("challenger state does not belong to the prf-eval scheme");
  return *key;
}

}  // namespace

Answer MalleablePuncturableScheme::meaningful_answer(const SchemeKey& k, uint64_t ch) const {
  return eval(k.aux, ch, [&k](uint64_t x) -> std::optional<uint64_t> { return k.C(x); });
}

PrfEvalScheme::PrfEvalScheme(int n_in, int n_out, int security_bits)
    : n_in_(n_in), n_out_(n_out), security_bits_(security_bits) {
  if (n_in < 1 || n_in > kMaxExampleInputBits) throw CapacityError("prf-eval: input bits must lie in [1, 12]");
  if (n_out < 1 || n_out > kMaxOutputBits) throw CapacityError("prf-eval: output bits must lie in [1, 62]");
}

double PrfEvalScheme::p_triv() const { return std::ldexp(1.0, -n_out_); }

SchemeInstance PrfEvalScheme::chal(Rng& rng) const {
  prf::PrfKey kf = prf::setup(security_bits_, n_in_, n_out_, rng);
  SchemeInstance inst;
  inst.key.C = [kf](uint64_t x) { return prf::eval_u64(kf, x); };
  inst.key.aux = {{"scheme", name()}, {"n_in", n_in_}, {"n_out", n_out_}};
  inst.key.q_rel = [](uint64_t x) { return x; };
  inst.st = kf;
  return inst;
}

uint64_t PrfEvalScheme::sample_input(const std::any&, Rng& rng) const { return rng.bits(n_in_); }

ChallengePair PrfEvalScheme::samp_ch_from_inp(const std::any& st, uint64_t x, Rng&) const {
  return {prf::eval_u64(prf_state(st), x), x};
}

std::vector<std::pair<ChallengePair, double>> PrfEvalScheme::challenge_distribution(const std::any& st) const {
  const auto& kf = prf_state(st);
  std::vector<std::pair<ChallengePair, double>> out;
  const double w = std::ldexp(1.0, -n_in_);
  for (uint64_t x = 0; x <= low_mask(n_in_); ++x) out.push_back({{prf::eval_u64(kf, x), x}, w});
  return out;
}

PuncturedCircuit PrfEvalScheme::mall_punc(const std::any& st, uint64_t x) const {
  prf::PuncturedPrfKey punctured = prf::puncture(prf_state(st), {x});
  return [punctured](uint64_t v) { return prf::punctured_eval_u64(punctured, v); };
}

Answer PrfEvalScheme::eval(const nlohmann::json&, uint64_t z, const Oracle& oracle) const {
  if (z > low_mask(n_in_)) throw DimensionMismatch("input wider than the scheme's input bits");
  return oracle(z);
}

std::optional<uint64_t> PrfEvalScheme::resample_challenge(const PuncturedCircuit&, const nlohmann::json&,
                                                          Rng& rng) const {
  return rng.bits(n_in_);
}

std::vector<std::string> scheme_names() { return {"prf-eval"}; }

std::unique_ptr<MalleablePuncturableScheme> make_scheme(const std::string& name, int n_in, int n_out) {
  if (name == "prf-eval") return std::make_unique<PrfEvalScheme>(n_in, n_out);
  throw ParameterError("unknown scheme '" + name + "'");
}

}  // namespace cplab::protect
