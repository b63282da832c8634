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

#include "cplab/bits.hpp"
#include "cplab/distribution.hpp"
#include "cplab/obfuscation.hpp"
#include "cplab/prf.hpp"
#include "cplab/rng.hpp"

namespace cplab::ace {

constexpr int kMaxMessageBits = 16;

// Toeplitz hashing over F2: out[i] = sum_j T[i][j] x[j] with
// T[i][j] = seed[i - j + in_bits - 1]. Input bit j is bit j of the word.
class Extractor {
 public:
  Extractor() = default;
  // Seed of in_bits + out_bits - 1 bits (BitString order).
  Extractor(BitString seed, int in_bits, int out_bits);
  static Extractor random(int in_bits, int out_bits, Rng& rng);

  int in_bits() const { return in_bits_; }
  int out_bits() const { return out_bits_; }
  const BitString& seed() const { return seed_; }
  // Row masks of the matrix; row i yields output bit i.
  const std::vector<uint64_t>& rows() const { return rows_; }

  // Throws DimensionMismatch when the sample is wider than in_bits.
  uint64_t operator()(uint64_t sample) const;

 private:
  BitString seed_;
  int in_bits_ = 0;
  int out_bits_ = 0;
  std::vector<uint64_t> rows_;
};

// Default extractor input width for n-bit messages: min(64, 4n + 16).
int default_extractor_input_bits(int n);

struct AceSecretKey {
  int n = 0;
  prf::PrfKey k1;  // n bits -> 3n bits
  prf::PrfKey k2;  // 3n bits -> n bits
  Extractor ext;   // in_bits -> 4n bits
};

// Admissible puncturing predicate over n-bit messages.
struct Predicate {
  std::string label;
  std::function<bool(uint64_t)> fn;

  bool operator()(uint64_t m) const { return fn(m); }

  static Predicate never();
  static Predicate always();
  static Predicate point(uint64_t m_star);
  // TRUE iff the message's most significant bit differs from b.
  static Predicate prefix(int b, int n);
};

struct EncapKey {
  int n = 0;
  obf::ObfProgram program;  // input m (n bits)
  Extractor ext;
};

struct DecapKey {
  int n = 0;
  obf::ObfProgram program;  // input alpha (3n bits) || beta (n bits)
  Extractor ext;
};

// Ciphertext layout: (alpha << n) | beta.
constexpr uint64_t pack_ciphertext(int n, uint64_t alpha, uint64_t beta) { return (alpha << n) | beta; }
constexpr int ciphertext_bits(int n) { return 4 * n; }

// extractor_input_bits = 0 selects the default width.
AceSecretKey setup(int n, int security_bits, Rng& rng, int extractor_input_bits = 0);

EncapKey gen_ek(const AceSecretKey& sk, const Predicate& C, obf::Registry& registry, Rng& rng);
DecapKey gen_dk(const AceSecretKey& sk, const Predicate& C, obf::Registry& registry, Rng& rng);

// Unpunctured ciphertext of m computed from the secret key.
uint64_t encapsulation_of(const AceSecretKey& sk, uint64_t m);

// nullopt is bottom.
std::optional<uint64_t> enc(const EncapKey& ek, uint64_t m);
std::optional<uint64_t> dec(const DecapKey& dk, uint64_t ct);

enum class StegStrategy {
  automatic,  // literal loop when cheap, geometric skip otherwise
  literal,    // draw from D until the extractor output matches
  geometric,  // same law: geometric trial count, then a conditional draw
};

enum class StegStatus { ok, punctured, exhausted };

struct StegResult {
  std::optional<uint64_t> sample;
  StegStatus status = StegStatus::exhausted;
  uint64_t t_limit = 0;
  uint64_t draws = 0;  // draws performed (literal) or the sampled trial count
};

struct StegOptions {
  StegStrategy strategy = StegStrategy::automatic;
  // 0 selects truncated_limit(epsilon, |supp D|).
  uint64_t t_limit = 0;
};

// Throws ParameterError when D is not admissible (min-entropy below 4n) and
// DimensionMismatch when D is wider than the extractor input.
StegResult steg_enc(const EncapKey& ek, uint64_t m, const SampleSource& D, double epsilon, Rng& rng,
                    const StegOptions& options = {});
std::optional<uint64_t> steg_dec(const DecapKey& dk, uint64_t sample);

// Support size of D as used for the truncation bound.
uint64_t support_size(const SampleSource& D);

// Pr_{s ~ D}[Ext(s) = y].
double preimage_weight(const Extractor& ext, const SampleSource& D, uint64_t y);

}  // namespace cplab::ace
