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

namespace cplab {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
// Returns [0, 1] when trials is zero.
Interval wilson_interval(uint64_t successes, uint64_t trials, double z = 1.96);

// Standard deviation of the success frequency: sqrt(p (1 - p) / trials).
double binomial_sigma(double p, uint64_t trials);

}  // namespace cplab
