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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cplab/bits.hpp"
#include "cplab/rng.hpp"

namespace cplab::prf {

constexpr int kDefaultSecurityBits = 128;
constexpr int kMaxInputBits = 48;
constexpr int kMaxOutputBits = 1024;

using Seed = std::vector<uint8_t>;

// GGM tree key. Input bits are consumed most significant first; the left
// child of a node uses tag 0 and the right child tag 1.
class PrfKey {
 public:
  PrfKey() = default;
  PrfKey(Seed root_seed, int input_bits, int output_bits);

  const Seed& root_seed() const { return root_seed_; }
  int input_bits() const { return input_bits_; }
  int output_bits() const { return output_bits_; }
  int security_bits() const { return static_cast<int>(root_seed_.size()) * 8; }

  std::string to_hex() const;
  static PrfKey from_hex(std::string_view text);
  bool operator==(const PrfKey&) const = default;

 private:
  Seed root_seed_;
  int input_bits_ = 0;
  int output_bits_ = 0;
};

// Tree node: `prefix` holds the first `depth` input bits.
struct NodePos {
  int depth = 0;
  uint64_t prefix = 0;
  auto operator<=>(const NodePos&) const = default;
};

class PuncturedPrfKey {
 public:
  const std::set<uint64_t>& punctured_set() const { return punctured_; }
  const std::map<NodePos, Seed>& copath_nodes() const { return copath_; }
  int input_bits() const { return input_bits_; }
  int output_bits() const { return output_bits_; }

  std::string to_hex() const;
  static PuncturedPrfKey from_hex(std::string_view text);
  bool operator==(const PuncturedPrfKey&) const = default;

 private:
  friend PuncturedPrfKey puncture(const PrfKey&, std::span<const uint64_t>);
  friend PuncturedPrfKey puncture(const PuncturedPrfKey&, std::span<const uint64_t>);
  std::set<uint64_t> punctured_;
  std::map<NodePos, Seed> copath_;
  int input_bits_ = 0;
  int output_bits_ = 0;
};

// security_bits must be a multiple of 8 in [64, 256].
PrfKey setup(int security_bits, int input_bits, int output_bits, Rng& rng);

BitString eval(const PrfKey& key, uint64_t x);
// Convenience form for output widths up to 64 bits.
uint64_t eval_u64(const PrfKey& key, uint64_t x);

// An empty set yields a key that covers the whole domain.
PuncturedPrfKey puncture(const PrfKey& key, std::span<const uint64_t> S);
PuncturedPrfKey puncture(const PrfKey& key, std::initializer_list<uint64_t> S);
// Punctures an already punctured key at additional points.
PuncturedPrfKey puncture(const PuncturedPrfKey& key, std::span<const uint64_t> S);

// nullopt signals puncture failure: no copath node covers x.
std::optional<BitString> punctured_eval(const PuncturedPrfKey& key, uint64_t x);
std::optional<uint64_t> punctured_eval_u64(const PuncturedPrfKey& key, uint64_t x);

// Building blocks, exposed for tests.
Seed child_seed(const Seed& seed, int bit);
Seed node_seed(const PrfKey& key, NodePos pos);
BitString expand_leaf(const Seed& leaf, int output_bits);

}  // namespace cplab::prf
