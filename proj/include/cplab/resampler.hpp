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
#include <map>
#include <optional>

#include "cplab/distribution.hpp"
#include "cplab/rng.hpp"

namespace cplab::resample {

using Fn = std::function<uint64_t(uint64_t)>;

// Exact law of a sampler that may output bottom.
struct OutputLaw {
  std::map<uint64_t, double> mass;
  double bottom = 0.0;

  double prob(uint64_t v) const;
  double total() const;
};

// Draw s ~ D, then s' ~ D conditioned on f(s') = f(s). Equal in law to the
// unbounded rejection loop.
uint64_t resample_infinite(const FiniteDistribution& D, const Fn& f, Rng& rng);
// Exact law of resample_infinite.
OutputLaw infinite_law(const FiniteDistribution& D, const Fn& f);

// ceil((2|supp|/eps) * ln(2|supp|/eps)); the bound the proof needs.
uint64_t truncated_limit(double epsilon, uint64_t support_size);
// Message-width form ceil(2 (n log 4 + log(1/eps)) |supp| / eps), log base 2.
uint64_t entropy_truncated_limit(int n, double epsilon, uint64_t support_size);

// Literal loop: y = f(s) for s ~ D, then at most t_limit draws looking for a
// preimage of y. nullopt is bottom.
std::optional<uint64_t> resample_truncated(const FiniteDistribution& D, const Fn& f, uint64_t t_limit, Rng& rng);

// Number of draws until the first success with probability q per draw,
// sampled in O(1); returns 0 when q == 0 (never succeeds). Values are >= 1.
uint64_t geometric_trials(double q, Rng& rng);

// Exact law of resample_truncated.
OutputLaw truncated_law(const FiniteDistribution& D, const Fn& f, uint64_t t_limit);
// Same loop with the target y drawn from `targets` instead of f(D).
OutputLaw truncated_law(const FiniteDistribution& D, const Fn& f, uint64_t t_limit,
                        const std::map<uint64_t, double>& targets);

// Push-forward of D through f.
std::map<uint64_t, double> pushforward(const FiniteDistribution& D, const Fn& f);

double exact_tv_distance(const FiniteDistribution& a, const FiniteDistribution& b);
// Bottom counts as a point outside D's support.
double exact_tv_distance(const FiniteDistribution& a, const OutputLaw& b);

}  // namespace cplab::resample
