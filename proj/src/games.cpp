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

#include "cplab/games.hpp"

#include <algorithm>

#include "cplab/errors.hpp"
#include "cplab/threshold.hpp"

namespace cplab::protect {
namespace {

void check_trials(uint64_t trials) {
  if (trials == 0) throw ParameterError("a game needs at least one trial");
}

nlohmann::json scheme_params(const MalleablePuncturableScheme& scheme) {
  return {{"scheme", scheme.name()}, {"n_in", scheme.input_bits()}, {"n_out", scheme.output_bits()}};
}

Answer uniform_guess(const MalleablePuncturableScheme& scheme, Rng& rng) { return rng.bits(scheme.output_bits()); }

nlohmann::json answer_json(const Answer& a) { return a ? nlohmann::json(*a) : nlohmann::json(nullptr); }

}  // namespace

double GameResult::side_rate(size_t side) const {
  if (side >= side_successes.size() || trials == 0) return 0.0;
  return static_cast<double>(side_successes[side]) / static_cast<double>(trials);
}

SecurityAdversary meaningful_adversary() {
  return {"meaningful", true,
          [](const SecurityView& v, Rng&) { return v.scheme->meaningful_answer(*v.key, v.ch); }};
}

SecurityAdversary blind_guess_adversary() {
  return {"blind-guess", false, [](const SecurityView& v, Rng& rng) { return uniform_guess(*v.scheme, rng); }};
}

GameResult run_security_game(const MalleablePuncturableScheme& scheme, const SecurityAdversary& adversary,
                             uint64_t trials, Rng& rng, const TrialSink& sink) {
  check_trials(trials);
  GameResult res{"security", trials, 0, {0}, scheme_params(scheme), {}};
  res.params["adversary"] = adversary.name;
  for (uint64_t t = 0; t < trials; ++t) {
    SchemeInstance inst = scheme.chal(rng);
    ChallengePair c = scheme.samp_ch(inst.st, rng);
    SecurityView view{&scheme, c.ch, adversary.wants_key ? &inst.key : nullptr};
    Answer ans = adversary.answer(view, rng);
    bool ok = scheme.ver(c.ak, ans);
    res.successes += ok;
    res.side_successes[0] += ok;
    if (sink) sink({t, ok, {ok}, {{"ch", c.ch}, {"answer", answer_json(ans)}}});
  }
  return res;
}

PuncturingAdversary eval_punctured_adversary() {
  return {"eval-punctured", false, [](const PuncturingView& v, Rng& rng) -> Answer {
            Answer a = v.scheme->eval(v.aux, v.ch, [&](uint64_t q) { return v.c_punc(q); });
            return a ? a : uniform_guess(*v.scheme, rng);
          }};
}

PuncturingAdversary unpunctured_control_adversary() {
  return {"unpunctured-control", true,
          [](const PuncturingView& v, Rng&) { return v.scheme->meaningful_answer(*v.unpunctured, v.ch); }};
}

GameResult run_malleable_puncturing_game(const MalleablePuncturableScheme& scheme,
                                         const PuncturingAdversary& adversary, uint64_t trials, Rng& rng,
                                         const TrialSink& sink) {
  check_trials(trials);
  GameResult res{"malleable-puncturing", trials, 0, {0}, scheme_params(scheme), {}};
  res.params["adversary"] = adversary.name;
  for (uint64_t t = 0; t < trials; ++t) {
    // 1. setup, 2. x <- D_inp(st), 3. (ak, ch) <- SampChFromInp(st, x),
    // 4. C_punc <- MallPunc(st, x), 5. challenge phase, 6. Ver.
    SchemeInstance inst = scheme.chal(rng);
    uint64_t x = scheme.sample_input(inst.st, rng);
    ChallengePair c = scheme.samp_ch_from_inp(inst.st, x, rng);
    PuncturingView view{&scheme, scheme.mall_punc(inst.st, x), inst.key.q_rel, inst.key.aux, c.ch, x,
                        adversary.wants_key ? &inst.key : nullptr};
    Answer ans = adversary.answer(view, rng);
    bool ok = scheme.ver(c.ak, ans);
    res.successes += ok;
    res.side_successes[0] += ok;
    if (sink) sink({t, ok, {ok}, {{"x", x}, {"ch", c.ch}, {"answer", answer_json(ans)}}});
  }
  return res;
}

PuncturingReport check_puncturing_correctness(const MalleablePuncturableScheme& scheme, const SchemeInstance& inst,
                                              uint64_t x) {
  if (scheme.input_bits() > kMaxExampleInputBits) throw CapacityError("protection-games: input domain too large");
  PuncturedCircuit punc = scheme.mall_punc(inst.st, x);
  PuncturingReport r;
  const uint64_t cx = inst.key.C(x);
  for (uint64_t xp = 0; xp < (uint64_t{1} << scheme.input_bits()); ++xp) {
    auto y = punc(xp);
    if (inst.key.q_rel(xp) == x) {
      ++r.related;
      r.bottom_on_related += !y.has_value();
      continue;
    }
    ++r.unrelated;
    r.agree_with_c_xprime += y && *y == inst.key.C(xp);
    r.agree_with_c_x += y && *y == cx;
  }
  return r;
}

namespace {

struct ProtectedTrial {
  SchemeInstance inst;
  ProtectedProgram prog;
  PirateSplit split;
};

ProtectedTrial setup_protected(const MalleablePuncturableScheme& scheme, const PirateAdversary& pirate, int d,
                               Rng& rng) {
  obf::Registry registry;
  // GenState, Chal, Protect, then the split by A0.
  GenStateResult g = gen_state(d, registry, rng);
  SchemeInstance inst = scheme.chal(rng);
  ProtectResult p = protect::protect(g.pp, inst.key, scheme.input_bits(), scheme.output_bits(), registry, rng);
  ProtectedProgram prog{g.pp, g.reg, p.P, p.aux, g.secret};
  PirateInput in{&scheme, prog.pp, prog.P, prog.aux, prog.reg};
  PirateSplit split = pirate.split(in, rng);
  return {std::move(inst), std::move(prog), std::move(split)};
}

nlohmann::json game_params(const MalleablePuncturableScheme& scheme, const PirateAdversary& pirate, int d,
                           uint64_t trials) {
  auto p = scheme_params(scheme);
  p["adversary"] = pirate.name;
  p["d"] = d;
  p["trials"] = trials;
  return p;
}

}  // namespace

GameResult run_copy_protection_game(const MalleablePuncturableScheme& scheme, const PirateAdversary& pirate, int d,
                                    uint64_t trials, Rng& rng, const TrialSink& sink) {
  check_trials(trials);
  GameResult res{"copy-protection", trials, 0, {0, 0}, game_params(scheme, pirate, d, trials), {}};
  for (uint64_t t = 0; t < trials; ++t) {
    ProtectedTrial pt = setup_protected(scheme, pirate, d, rng);
    ChallengePair c1 = scheme.samp_ch(pt.inst.st, rng);
    ChallengePair c2 = scheme.samp_ch(pt.inst.st, rng);
    // Each side sees only its own challenge and register.
    SideProgram& s1 = pt.split.first;
    SideProgram& s2 = pt.split.second;
    Answer a1 = s1.answer(c1.ch, s1.reg, rng);
    Answer a2 = s2.answer(c2.ch, s2.reg, rng);
    bool b1 = scheme.ver(c1.ak, a1);
    bool b2 = scheme.ver(c2.ak, a2);
    bool ok = b1 && b2;
    res.successes += ok;
    res.side_successes[0] += b1;
    res.side_successes[1] += b2;
    if (sink) {
      sink({t, ok, {b1, b2},
            {{"ch1", c1.ch}, {"ch2", c2.ch}, {"answer1", answer_json(a1)}, {"answer2", answer_json(a2)}}});
    }
  }
  return res;
}

double side_threshold_acceptance(const SideProgram& side,
                                 const std::vector<std::pair<ChallengePair, double>>& challenges, double eta) {
  if (side.reg.num_qubits() > threshold::kMaxQubits) {
    throw CapacityError("threshold-measurements: side register exceeds 8 qubits");
  }
  const Eigen::Index dim = side.reg.dimension();
  Matrix E = Matrix::Zero(dim, dim);
  for (const auto& [c, w] : challenges) {
    SupportedOperator op = side.acceptance(c.ch, c.ak);
    for (size_t i = 0; i < op.support.size(); ++i) {
      for (size_t j = 0; j < op.support.size(); ++j) {
        E(static_cast<Eigen::Index>(op.support[i]), static_cast<Eigen::Index>(op.support[j])) +=
            w * op.block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  E = (E + E.adjoint()) / 2.0;
  return threshold::ThresholdMeasurement::from_mixture(E, eta).acceptance(side.reg);
}

GameResult run_strong_antipiracy_game(const MalleablePuncturableScheme& scheme, const PirateAdversary& pirate, int d,
                                      double gamma, uint64_t trials, Rng& rng, const TrialSink& sink) {
  check_trials(trials);
  const double eta = std::clamp(scheme.p_triv() + gamma, 0.0, 1.0);
  GameResult res{"strong-antipiracy", trials, 0, {0, 0}, game_params(scheme, pirate, d, trials), {}};
  res.params["gamma"] = gamma;
  double mean1 = 0.0, mean2 = 0.0, mean_joint = 0.0;
  for (uint64_t t = 0; t < trials; ++t) {
    ProtectedTrial pt = setup_protected(scheme, pirate, d, rng);
    auto challenges = scheme.challenge_distribution(pt.inst.st);
    double p1 = std::clamp(side_threshold_acceptance(pt.split.first, challenges, eta), 0.0, 1.0);
    double p2 = std::clamp(side_threshold_acceptance(pt.split.second, challenges, eta), 0.0, 1.0);
    bool b1 = rng.bernoulli(p1);
    bool b2 = rng.bernoulli(p2);
    bool ok = b1 && b2;
    res.successes += ok;
    res.side_successes[0] += b1;
    res.side_successes[1] += b2;
    mean1 += p1;
    mean2 += p2;
    mean_joint += p1 * p2;
    if (sink) sink({t, ok, {b1, b2}, {{"p1", p1}, {"p2", p2}}});
  }
  const double n = static_cast<double>(trials);
  res.summary = {{"threshold", eta},
                 {"degenerate_threshold", gamma <= 0.0},
                 {"mean_side1_acceptance", mean1 / n},
                 {"mean_side2_acceptance", mean2 / n},
                 {"mean_joint_acceptance", mean_joint / n}};
  return res;
}

}  // namespace cplab::protect
