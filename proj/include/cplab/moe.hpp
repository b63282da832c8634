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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cplab/games.hpp"
#include "cplab/gf2.hpp"
#include "cplab/quantum.hpp"

namespace cplab::protect {

// Classical information given to A0 along with the coset state.
struct MoePublic {
  int d = 0;
  gf2::Gf2Subspace B1;
  gf2::Gf2Subspace B2;
  gf2::Gf2Vector t;
  gf2::Gf2Vector t_prime;
};

// What one side keeps after the split.
struct MoeShare {
  std::optional<QuantumRegister> reg;
  std::vector<uint64_t> words;
};

// A side's answer after A is revealed; the first side targets Can_A(a1), the
// second Can_{A^perp}(a2).
using MoeAnswer = std::function<uint64_t(const gf2::Gf2Subspace& A, const MoePublic&, MoeShare&, Rng&)>;

struct MoeAdversary {
  std::string name;
  std::function<std::pair<MoeShare, MoeShare>(const QuantumRegister&, const MoePublic&, Rng&)> split;
  MoeAnswer answer1;
  MoeAnswer answer2;
  // Exact win probability on one instance by enumeration; built-ins only.
  std::function<double(const gf2::CosetInstance&)> exact;
  // Closed-form rate at dimension d; built-ins only.
  std::function<double(int)> closed_form;
};

// Sample an instance, hand (register, B1, B2, t, t') to A0, split, reveal A to
// both sides, and check v = Can_A(a1) and w = Can_{A^perp}(a2).
GameResult run_moe_game(int d, const MoeAdversary& adversary, uint64_t trials, Rng& rng, const TrialSink& sink = {});

// How a built-in side produces its vector.
enum class MoeStrategy {
  computational,  // measure the coset state in the computational basis
  hadamard,       // measure in the Hadamard basis
  guess_uniform,  // uniform vector in F_2^d
  guess_outer,    // uniform vector in the side's outer coset: B1 + t or B2^perp + t'
};

// Product of the two sides' exact success probabilities on `inst`, by
// enumerating measurement outcomes and guesses.
double moe_brute_force_rate(MoeStrategy first, MoeStrategy second, const gf2::CosetInstance& inst);

// Built-ins: split-basis, split-hadamard, split-state, split-state-hadamard.
std::vector<std::string> moe_adversary_names();
MoeAdversary make_moe_adversary(const std::string& name);

}  // namespace cplab::protect
