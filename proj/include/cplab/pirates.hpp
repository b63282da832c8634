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

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cplab/protect.hpp"

namespace cplab::protect {

// Public parts of a protected program as handed to the splitting adversary.
struct PirateInput {
  const MalleablePuncturableScheme* scheme = nullptr;
  obf::ObfProgram pp;
  obf::ObfProgram P;
  nlohmann::json aux;
  QuantumRegister reg;
};

// One half of a split: a register plus the procedure run on it. The answer
// closure sees only the challenge and this side's register.
struct SideProgram {
  std::string label;
  QuantumRegister reg;
  std::function<Answer(uint64_t ch, QuantumRegister& reg, Rng& rng)> answer;
  // Operator on reg's space accepted by Ver(ak, .) when answering ch.
  std::function<SupportedOperator(uint64_t ch, uint64_t ak)> acceptance;
};

struct PirateSplit {
  SideProgram first;
  SideProgram second;
};

struct PirateAdversary {
  std::string name;
  std::function<PirateSplit(const PirateInput&, Rng&)> split;
};

// Widest guess register the forwarding pirate builds.
constexpr int kMaxGuessQubits = 8;

// Side that runs honest protected evaluation on `reg`.
SideProgram evaluating_side(std::string label, const PirateInput& in, QuantumRegister reg);
// Side holding a maximally mixed output-width register, answering by a
// computational-basis measurement.
SideProgram guessing_side(std::string label, const MalleablePuncturableScheme& scheme);

// Built-ins:
//   forwarding       side 1 keeps the register, side 2 guesses.
//   basis-cloner     measures the register, both sides get |v>.
//   hadamard-cloner  measures in the Hadamard basis, both sides get H|w>.
std::vector<std::string> pirate_names();
PirateAdversary make_pirate(const std::string& name);

}  // namespace cplab::protect
