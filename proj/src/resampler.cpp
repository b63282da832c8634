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

#include "cplab/resampler.hpp"

#include <cmath>
#include <vector>

#include "cplab/errors.hpp"

namespace cplab::resample {
namespace {

struct Fibres {
  std::map<uint64_t, double> weight;                  // Pr_D[f(s) = y]
  std::map<uint64_t, std::vector<size_t>> members;   // support indices with f(s) = y
  std::vector<uint64_t> label;                        // f(s) per support index
};

Fibres fibres(const FiniteDistribution& D, const Fn& f) {
  Fibres out;
  out.label.reserve(D.size());
  for (size_t i = 0; i < D.size(); ++i) {
    uint64_t y = f(D.support()[i]);
    out.label.push_back(y);
    out.weight[y] += D.probs()[i];
    out.members[y].push_back(i);
  }
  return out;
}

void check_epsilon(double epsilon, uint64_t support_size) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (support_size < 1) throw ParameterError("support size must be positive");
}

}  // namespace

double OutputLaw::prob(uint64_t v) const {
  auto it = mass.find(v);
  return it == mass.end() ? 0.0 : it->second;
}

double OutputLaw::total() const {
  double t = bottom;
  for (const auto& [v, p] : mass) t += p;
  return t;
}

uint64_t resample_infinite(const FiniteDistribution& D, const Fn& f, Rng& rng) {
  uint64_t y = f(D.sample(rng));
  // Conditional draw by inverse CDF over the fibre of y.
  double wy = 0.0;
  std::vector<size_t> fibre;
  for (size_t i = 0; i < D.size(); ++i) {
    if (D.probs()[i] > 0.0 && f(D.support()[i]) == y) {
      fibre.push_back(i);
      wy += D.probs()[i];
    }
  }
  double u = rng.uniform() * wy;
  double acc = 0.0;
  for (size_t i : fibre) {
    acc += D.probs()[i];
    if (u < acc) return D.support()[i];
  }
  return D.support()[fibre.back()];
}

OutputLaw infinite_law(const FiniteDistribution& D, const Fn& f) {
  Fibres fb = fibres(D, f);
  OutputLaw law;
  // sum_y Pr[f(s)=y] * Pr[s'=x | f(s')=y].
  for (size_t i = 0; i < D.size(); ++i) {
    double w = fb.weight[fb.label[i]];
    if (w > 0.0) law.mass[D.support()[i]] += w * (D.probs()[i] / w);
  }
  return law;
}

uint64_t truncated_limit(double epsilon, uint64_t support_size) {
  check_epsilon(epsilon, support_size);
  double r = 2.0 * static_cast<double>(support_size) / epsilon;
  double v = std::ceil(r * std::log(r));
  return v >= 0x1.0p64 ? UINT64_MAX : static_cast<uint64_t>(v);
}

uint64_t entropy_truncated_limit(int n, double epsilon, uint64_t support_size) {
  check_epsilon(epsilon, support_size);
  if (n < 0) throw ParameterError("n must be nonnegative");
  double v = std::ceil(2.0 * (2.0 * n + std::log2(1.0 / epsilon)) * static_cast<double>(support_size) / epsilon);
  return v >= 0x1.0p64 ? UINT64_MAX : static_cast<uint64_t>(v);
}

std::optional<uint64_t> resample_truncated(const FiniteDistribution& D, const Fn& f, uint64_t t_limit, Rng& rng) {
  uint64_t y = f(D.sample(rng));
  for (uint64_t cnt = 1; cnt <= t_limit; ++cnt) {
    uint64_t s = D.sample(rng);
    if (f(s) == y) return s;
  }
  return std::nullopt;
}

uint64_t geometric_trials(double q, Rng& rng) {
  if (q <= 0.0) return 0;
  if (q >= 1.0) return 1;
  double k = std::floor(std::log(rng.uniform_open()) / std::log1p(-q)) + 1.0;
  if (k >= 1.8e19) return UINT64_MAX;
  return static_cast<uint64_t>(k);
}

OutputLaw truncated_law(const FiniteDistribution& D, const Fn& f, uint64_t t_limit,
                        const std::map<uint64_t, double>& targets) {
  Fibres fb = fibres(D, f);
  OutputLaw law;
  for (const auto& [y, py] : targets) {
    if (py <= 0.0) continue;
    auto it = fb.weight.find(y);
    double q = it == fb.weight.end() ? 0.0 : it->second;
    // Success within t_limit draws, then the conditional law of the fibre.
    double success = q > 0.0 ? -std::expm1(static_cast<double>(t_limit) * std::log1p(-q)) : 0.0;
    if (q >= 1.0) success = t_limit > 0 ? 1.0 : 0.0;
    law.bottom += py * (1.0 - success);
    if (success == 0.0) continue;
    for (size_t i : fb.members[y]) law.mass[D.support()[i]] += py * success * D.probs()[i] / q;
  }
  return law;
}

OutputLaw truncated_law(const FiniteDistribution& D, const Fn& f, uint64_t t_limit) {
  return truncated_law(D, f, t_limit, pushforward(D, f));
}

std::map<uint64_t, double> pushforward(const FiniteDistribution& D, const Fn& f) {
  std::map<uint64_t, double> out;
  for (size_t i = 0; i < D.size(); ++i) out[f(D.support()[i])] += D.probs()[i];
  return out;
}

double exact_tv_distance(const FiniteDistribution& a, const FiniteDistribution& b) {
  double s = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a.support()[i] < b.support()[j])) {
      s += a.probs()[i++];
    } else if (i == a.size() || b.support()[j] < a.support()[i]) {
      s += b.probs()[j++];
    } else {
      s += std::abs(a.probs()[i++] - b.probs()[j++]);
    }
  }
  return 0.5 * s;
}

double exact_tv_distance(const FiniteDistribution& a, const OutputLaw& b) {
  double s = b.bottom;
  for (size_t i = 0; i < a.size(); ++i) s += std::abs(a.probs()[i] - b.prob(a.support()[i]));
  for (const auto& [v, p] : b.mass) {
    if (a.index_of(v) == a.size()) s += p;
  }
  return 0.5 * s;
}

}  // namespace cplab::resample
