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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cplab/pirates.hpp"
#include "cplab/scheme.hpp"
#include "cplab/stats.hpp"

namespace cplab::protect {

struct TrialRecord {
  uint64_t trial = 0;
  bool outcome = false;
  std::vector<int> side_outcomes;
  nlohmann::json detail;
};

// Receives every trial in order.
using TrialSink = std::function<void(const TrialRecord&)>;

struct GameResult {
  std::string game;
  uint64_t trials = 0;
  uint64_t successes = 0;
  std::vector<uint64_t> side_successes;
  nlohmann::json params;
  nlohmann::json summary;  // game-specific aggregates

  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
  double side_rate(size_t side) const;
  Interval ci() const { return wilson_interval(successes, trials); }
};

// --- Security game -------------------------------------------------------

struct SecurityView {
  const MalleablePuncturableScheme* scheme = nullptr;
  uint64_t ch = 0;
  const SchemeKey* key = nullptr;  // set only for adversaries that request it
};

struct SecurityAdversary {
  std::string name;
  bool wants_key = false;
  std::function<Answer(const SecurityView&, Rng&)> answer;
};

// Meaningfulness algorithm B(k, ch); receives the key.
SecurityAdversary meaningful_adversary();
// Uniform output-width guess.
SecurityAdversary blind_guess_adversary();

// Throws ParameterError for zero trials.
GameResult run_security_game(const MalleablePuncturableScheme& scheme, const SecurityAdversary& adversary,
                             uint64_t trials, Rng& rng, const TrialSink& sink = {});

// --- Malleable puncturing game -------------------------------------------

struct PuncturingView {
  const MalleablePuncturableScheme* scheme = nullptr;
  PuncturedCircuit c_punc;
  std::function<uint64_t(uint64_t)> q_rel;
  nlohmann::json aux;
  uint64_t ch = 0;
  uint64_t x = 0;
  const SchemeKey* unpunctured = nullptr;  // control runs only
};

struct PuncturingAdversary {
  std::string name;
  bool wants_key = false;
  std::function<Answer(const PuncturingView&, Rng&)> answer;
};

// Runs Eval on ch through the punctured circuit; guesses uniformly on bottom.
PuncturingAdversary eval_punctured_adversary();
// Control: evaluates with the unpunctured key.
PuncturingAdversary unpunctured_control_adversary();

GameResult run_malleable_puncturing_game(const MalleablePuncturableScheme& scheme,
                                         const PuncturingAdversary& adversary, uint64_t trials, Rng& rng,
                                         const TrialSink& sink = {});

// Exhaustive comparison of C_punc against C over every input x' with
// Q_rel(x') != x. Both readings of the requirement are counted: agreement
// with C(x') and agreement with C(x).
struct PuncturingReport {
  uint64_t unrelated = 0;
  uint64_t related = 0;
  uint64_t agree_with_c_xprime = 0;
  uint64_t agree_with_c_x = 0;
  uint64_t bottom_on_related = 0;
  bool holds() const { return agree_with_c_xprime == unrelated; }
};
PuncturingReport check_puncturing_correctness(const MalleablePuncturableScheme& scheme, const SchemeInstance& inst,
                                              uint64_t x);

// --- Copy protection ------------------------------------------------------

// Everything is sampled fresh per trial, including independent challenges
// for the two sides.
GameResult run_copy_protection_game(const MalleablePuncturableScheme& scheme, const PirateAdversary& pirate, int d,
                                    uint64_t trials, Rng& rng, const TrialSink& sink = {});

// Threshold implementation at p_triv + gamma applied to each side, where the
// projective family is the side's acceptance operator over SampCh(st). The
// split is a product of the two side registers, so the two threshold
// outcomes are sampled independently from their exact acceptance
// probabilities. gamma <= 0 is flagged as a degenerate threshold.
GameResult run_strong_antipiracy_game(const MalleablePuncturableScheme& scheme, const PirateAdversary& pirate, int d,
                                      double gamma, uint64_t trials, Rng& rng, const TrialSink& sink = {});

// Threshold-implementation acceptance of one side over a challenge
// distribution; exposed for tests.
double side_threshold_acceptance(const SideProgram& side,
                                 const std::vector<std::pair<ChallengePair, double>>& challenges, double eta);

}  // namespace cplab::protect
