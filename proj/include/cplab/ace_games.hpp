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
#include <vector>

#include "cplab/ace.hpp"
#include "cplab/distribution.hpp"
#include "cplab/rng.hpp"

namespace cplab::ace {

// Counts of violations for the five scheme correctness properties.
struct CorrectnessReport {
  uint64_t decapsulation = 0;        // Dec(dk_C, Enc(ek_C', m)) != m with C(m) = C'(m) = FALSE
  uint64_t constrained_encap = 0;    // Enc(ek_C, m) != Enc(ek_FALSE, m) with C(m) = FALSE
  uint64_t safety = 0;               // Dec(dk_C, str) = m with C(m) = TRUE
  uint64_t constrained_decap = 0;    // Dec(dk_C, str) = m1 != m2 = Dec(dk_FALSE, str) with C(m1) = FALSE
  uint64_t unique = 0;               // Dec(dk_FALSE, str) = m for str != F(sk, m), or F(sk, m) rejected
  uint64_t messages_checked = 0;
  uint64_t strings_checked = 0;
  bool ok() const { return decapsulation + constrained_encap + safety + constrained_decap + unique == 0; }
};

// Checks every property for the predicate pair (C, C'). With probes unset the
// message space and the 4n-bit string space are enumerated (n <= 5);
// otherwise `probes` random messages and strings are drawn.
CorrectnessReport check_correctness(const AceSecretKey& sk, const Predicate& C, const Predicate& C_prime,
                                    obf::Registry& registry, Rng& rng, std::optional<uint64_t> probes = {});

struct GameStats {
  uint64_t trials = 0;
  uint64_t wins = 0;
  double win_rate() const { return trials ? static_cast<double>(wins) / static_cast<double>(trials) : 0.0; }
  double advantage() const { return win_rate() - 0.5; }
};

struct PunctureHidingView {
  int n = 0;
  const EncapKey* ek = nullptr;
  const DecapKey* dk = nullptr;
};

struct CiphertextView {
  int n = 0;
  const EncapKey* ek = nullptr;  // punctured by C1
  const DecapKey* dk = nullptr;  // punctured by C2
  std::vector<std::optional<uint64_t>> challenge;  // nullopt is a bottom output
  const SampleSource* source = nullptr;  // set for the steganographic game
};

using PunctureHidingDistinguisher = std::function<int(const PunctureHidingView&, Rng&)>;
using CiphertextDistinguisher = std::function<int(const CiphertextView&, Rng&)>;

// Requires C(m) = TRUE wherever C0(m) != C1(m), checked over all messages;
// otherwise an encapsulation key alone separates the two decapsulation keys.
GameStats puncture_hiding_game(int n, const Predicate& C, const Predicate& C0, const Predicate& C1,
                               const PunctureHidingDistinguisher& adversary, uint64_t trials, Rng& rng);

// Messages must satisfy C1(m) = C2(m) = TRUE.
GameStats pr_ciphertext_game(int n, const Predicate& C1, const Predicate& C2, const std::vector<uint64_t>& messages,
                             const CiphertextDistinguisher& adversary, uint64_t trials, Rng& rng);

GameStats steg_ciphertext_game(int n, const Predicate& C1, const Predicate& C2,
                               const std::vector<uint64_t>& messages, const SampleSource& D, double epsilon,
                               const CiphertextDistinguisher& adversary, uint64_t trials, Rng& rng);

// Built-in trivial distinguishers.
namespace distinguishers {
PunctureHidingDistinguisher random_guess();
// Decapsulates encapsulations of random messages and guesses from the
// fraction rejected.
PunctureHidingDistinguisher reject_rate(uint64_t probes);
CiphertextDistinguisher random_guess_ct();
// Outputs 1 when any challenge decapsulates under the punctured key.
CiphertextDistinguisher decap_probe();
// Outputs the low bit of the first challenge.
CiphertextDistinguisher low_bit();
}  // namespace distinguishers

}  // namespace cplab::ace
