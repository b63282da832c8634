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

#include <string>
#include <vector>

#include "cplab/obfuscation.hpp"
#include "cplab/rng.hpp"

namespace cplab::protect {

// Two registered programs that a proof step treats as interchangeable (or,
// for controls, as distinguishable).
struct HybridPair {
  std::string name;
  obf::ObfProgram left;
  obf::ObfProgram right;
  bool expect_equivalent = true;
};

struct HybridReport {
  std::string name;
  bool expect_equivalent = true;
  obf::EquivalenceResult result;
  bool as_expected() const { return result.equivalent == expect_equivalent; }
};

HybridReport check_pair(const HybridPair& pair);

// Membership program on (A, a1, a2) against the one on (B1 + t, B2^perp + t').
// They differ, so this is a negative control.
HybridPair membership_pair(int d, obf::Registry& registry, Rng& rng);

// Protected program P against the modified program that first decapsulates
// Q_rel(x) with dk'. With `puncture_everywhere` dk' = GenDK(sk, TRUE) never
// decapsulates and the two programs agree; otherwise dk' = GenDK(sk, FALSE)
// and they differ on valid ciphertexts (control).
//
// Toy encoding at message width n: x is a 4n-bit ciphertext-shaped input and
// C is a PRF from 4n to 8 bits. A decapsulated payload carries the branch bit
// t as its top bit and z in its low n - 1 bits; A' and the extractor seed are
// the challenger's own values. Ext is Toeplitz from d to n - 1 bits and G
// expands r' to a PRF seed with SHA-256.
HybridPair protect_decap_pair(int n, int d, bool puncture_everywhere, obf::Registry& registry, Rng& rng);

// Encapsulation program with K1 against the same program with K1 punctured at
// m*, both puncturing C1 = {m*}. With `predicate_covers` false C1 is empty
// and the pair differs at m* (control).
HybridPair ace_encap_pair(int n, bool predicate_covers, obf::Registry& registry, Rng& rng);

// Decapsulation program with K1 against the one with K1 punctured at m*,
// both puncturing C2 = {m*}.
HybridPair ace_decap_pair(int n, bool predicate_covers, obf::Registry& registry, Rng& rng);

}  // namespace cplab::protect
