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
#include <string>
#include <string_view>
#include <vector>

#include "cplab/rng.hpp"

namespace cplab {

constexpr uint64_t kMaxSupport = uint64_t{1} << 20;

// Explicit distribution over 64-bit values. Support values are distinct and
// kept in ascending order; probabilities sum to one within 1e-12.
class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  FiniteDistribution(std::vector<uint64_t> support, std::vector<double> probs);

  static FiniteDistribution uniform(std::vector<uint64_t> support);
  static FiniteDistribution point(uint64_t value);
  // Uniform over {0,1}^width, width <= 20.
  static FiniteDistribution uniform_bits(int width);

  // One `value_hex probability` pair per line; blank lines and '#' comments
  // are skipped.
  static FiniteDistribution parse(std::string_view text);
  static FiniteDistribution load(const std::string& path);
  std::string to_text() const;

  size_t size() const { return support_.size(); }
  const std::vector<uint64_t>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(uint64_t value) const;
  // Position of `value` in support(), or size() if absent.
  size_t index_of(uint64_t value) const;

  uint64_t sample(Rng& rng) const;
  // -log2 of the largest point mass.
  double min_entropy() const;

 private:
  std::vector<uint64_t> support_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

// Sample source for steganographic embedding: either an explicit
// distribution or the uniform distribution over a fixed bit width.
class SampleSource {
 public:
  enum class Kind { explicit_dist, uniform };

  static SampleSource from(FiniteDistribution d, int width);
  static SampleSource uniform(int width);
  // "uniform:<w>" or a path to a distribution file.
  static SampleSource parse(const std::string& spec);

  Kind kind() const { return kind_; }
  int width() const { return width_; }
  const FiniteDistribution& distribution() const { return dist_; }
  uint64_t sample(Rng& rng) const;
  double min_entropy() const;
  // Probability of a single value.
  double prob(uint64_t value) const;

 private:
  Kind kind_ = Kind::uniform;
  int width_ = 0;
  FiniteDistribution dist_;
};

}  // namespace cplab
