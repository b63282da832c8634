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

#include "cplab/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"

namespace cplab {

FiniteDistribution::FiniteDistribution(std::vector<uint64_t> support, std::vector<double> probs) {
  if (support.size() != probs.size()) throw DimensionMismatch("support and probabilities differ in length");
  if (support.empty()) throw ParameterError("distribution needs a nonempty support");
  if (support.size() > kMaxSupport) throw CapacityError("support larger than 2^20");
  std::vector<size_t> order(support.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return support[a] < support[b]; });
  double total = 0.0;
  for (size_t i : order) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) throw ParameterError("probabilities must be nonnegative");
    if (!support_.empty() && support_.back() == support[i]) throw ParameterError("support values must be distinct");
    support_.push_back(support[i]);
    probs_.push_back(probs[i]);
    total += probs[i];
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) throw ParameterError("probabilities must sum to one");
}

FiniteDistribution FiniteDistribution::uniform(std::vector<uint64_t> support) {
  std::vector<double> p(support.size(), support.empty() ? 0.0 : 1.0 / static_cast<double>(support.size()));
  return FiniteDistribution(std::move(support), std::move(p));
}

FiniteDistribution FiniteDistribution::point(uint64_t value) { return FiniteDistribution({value}, {1.0}); }

FiniteDistribution FiniteDistribution::uniform_bits(int width) {
  if (width < 0 || width > 20) throw CapacityError("explicit uniform distributions are limited to 20 bits");
  std::vector<uint64_t> s(size_t{1} << width);
  std::iota(s.begin(), s.end(), uint64_t{0});
  return uniform(std::move(s));
}

FiniteDistribution FiniteDistribution::parse(std::string_view text) {
  std::vector<uint64_t> values;
  std::vector<double> probs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string hex;
    if (!(ls >> hex)) continue;
    double p = 0.0;
    std::string rest;
    if (!(ls >> p) || (ls >> rest)) {
      throw ParameterError("distribution line " + std::to_string(lineno) + ": expected `value_hex probability`");
    }
    values.push_back(parse_hex(hex));
    probs.push_back(p);
  }
  return FiniteDistribution(std::move(values), std::move(probs));
}

FiniteDistribution FiniteDistribution::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open distribution file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string FiniteDistribution::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (size_t i = 0; i < support_.size(); ++i) {
    int bits = std::max(4, static_cast<int>(std::bit_width(support_[i])));
    os << to_hex(support_[i], bits) << ' ' << probs_[i] << '\n';
  }
  return os.str();
}

size_t FiniteDistribution::index_of(uint64_t value) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), value);
  if (it == support_.end() || *it != value) return support_.size();
  return static_cast<size_t>(it - support_.begin());
}

double FiniteDistribution::prob(uint64_t value) const {
  size_t i = index_of(value);
  return i == support_.size() ? 0.0 : probs_[i];
}

uint64_t FiniteDistribution::sample(Rng& rng) const {
  if (support_.empty()) throw ParameterError("cannot sample an empty distribution");
  double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  size_t i = std::min(static_cast<size_t>(it - cumulative_.begin()), support_.size() - 1);
  // Never return a zero-mass value because of rounding at the boundary.
  while (probs_[i] == 0.0 && i > 0) --i;
  return support_[i];
}

double FiniteDistribution::min_entropy() const {
  return -std::log2(*std::max_element(probs_.begin(), probs_.end()));
}

SampleSource SampleSource::from(FiniteDistribution d, int width) {
  if (width < 1 || width > 64) throw ParameterError("sample width must lie in [1, 64]");
  for (uint64_t v : d.support()) {
    if (v > low_mask(width)) throw DimensionMismatch("support value wider than the declared sample width");
  }
  SampleSource s;
  s.kind_ = Kind::explicit_dist;
  s.width_ = width;
  s.dist_ = std::move(d);
  return s;
}

SampleSource SampleSource::uniform(int width) {
  if (width < 1 || width > 64) throw ParameterError("sample width must lie in [1, 64]");
  SampleSource s;
  s.kind_ = Kind::uniform;
  s.width_ = width;
  return s;
}

SampleSource SampleSource::parse(const std::string& spec) {
  if (spec.rfind("uniform:", 0) == 0) {
    int w = 0;
    try {
      w = std::stoi(spec.substr(8));
    } catch (const std::exception&) {
      throw ParameterError("bad uniform width in '" + spec + "'");
    }
    return uniform(w);
  }
  FiniteDistribution d = FiniteDistribution::load(spec);
  int width = std::max(1, static_cast<int>(std::bit_width(d.support().back())));
  return from(std::move(d), width);
}

uint64_t SampleSource::sample(Rng& rng) const {
  return kind_ == Kind::uniform ? rng.bits(width_) : dist_.sample(rng);
}

double SampleSource::min_entropy() const {
  return kind_ == Kind::uniform ? static_cast<double>(width_) : dist_.min_entropy();
}

double SampleSource::prob(uint64_t value) const {
  if (kind_ == Kind::explicit_dist) return dist_.prob(value);
  return value <= low_mask(width_) ? std::ldexp(1.0, -width_) : 0.0;
}

}  // namespace cplab
