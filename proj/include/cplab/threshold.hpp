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
#include <span>
#include <string>
#include <vector>

#include "cplab/distribution.hpp"
#include "cplab/quantum.hpp"
#include "cplab/rng.hpp"

namespace cplab::threshold {

using quantum::BinaryProjector;
using quantum::Matrix;
using quantum::MeasurementResult;
using quantum::QuantumRegister;

constexpr int kMaxQubits = 8;
// Eigenvalues at least eta - kTieTolerance count as above the threshold.
constexpr double kTieTolerance = 1e-12;
constexpr uint64_t kMaxDefaultSamples = 10000;

// Binary projective measurements indexed by challenges, with a challenge
// distribution over the index set.
class ProjectiveFamily {
 public:
  // Every index in the distribution's support needs a projector; all
  // projectors share one power-of-two dimension of at most 2^8.
  ProjectiveFamily(std::map<uint64_t, BinaryProjector> projectors, FiniteDistribution challenge_dist);

  // Indices 0..k-1 with the given weights (uniform when empty).
  static ProjectiveFamily indexed(std::vector<BinaryProjector> projectors, std::vector<double> weights = {});

  Eigen::Index dimension() const { return dim_; }
  int num_qubits() const;
  const std::map<uint64_t, BinaryProjector>& projectors() const { return projectors_; }
  const BinaryProjector& projector(uint64_t index) const;
  const FiniteDistribution& challenge_dist() const { return dist_; }

  // E = sum_i Pr[i] P_i.
  Matrix mixture() const;

 private:
  std::map<uint64_t, BinaryProjector> projectors_;
  FiniteDistribution dist_;
  Eigen::Index dim_ = 0;
};

// Projective measurement onto the eigenspaces of a mixture E with eigenvalue
// at least eta. Immutable once built.
class ThresholdMeasurement {
 public:
  // Thresholds outside [0, 1] are rejected.
  static ThresholdMeasurement from_mixture(const Matrix& E, double eta);

  double eta() const { return eta_; }
  Eigen::Index dimension() const { return projector_.rows(); }
  // Ascending eigenvalues of E and matching orthonormal eigenvectors.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  // Outcome-1 projector.
  const Matrix& projector() const { return projector_; }
  const BinaryProjector& measurement() const { return measurement_; }
  Eigen::Index accepted_rank() const { return rank_; }

  // Tr[TI rho].
  double acceptance(const Matrix& rho) const;
  double acceptance(const QuantumRegister& reg) const;

 private:
  double eta_ = 0.0;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
  Matrix projector_;
  BinaryProjector measurement_;
  Eigen::Index rank_ = 0;
};

ThresholdMeasurement build_ti(const ProjectiveFamily& family, double eta);

// Throws DimensionMismatch when the register does not match.
MeasurementResult apply_ti(const ThresholdMeasurement& ti, const QuantumRegister& reg, Rng& rng);

// Approximate threshold implementation: the exact TI at eta, tagged with the
// declared slack parameters.
struct ApproxThreshold {
  ThresholdMeasurement ti;
  double epsilon = 0.0;
  double delta = 0.0;
};

// eps and delta must lie in (0, 1); eta is clamped into [0, 1] so that
// shifted thresholds such as eta - eps are accepted.
ApproxThreshold build_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta);
MeasurementResult apply_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta,
                            const QuantumRegister& reg, Rng& rng);

// ceil(ln(2 / delta) / eps^2), capped at kMaxDefaultSamples.
uint64_t default_sample_count(double epsilon, double delta);

using ProjectorBuilder = std::function<BinaryProjector(uint64_t)>;

// Empirical mixture (1/l) sum_j P_{s_j} over explicitly supplied challenges.
Matrix empirical_mixture(const ProjectorBuilder& builder, std::span<const uint64_t> samples);

// Thresholds the empirical mixture at eta (clamped into [0, 1]). Only the
// listed samples are used; the challenge distribution is never consulted.
// Throws ParameterError for an empty list.
ThresholdMeasurement sim_ati_measurement(const ProjectorBuilder& builder, std::span<const uint64_t> samples,
                                         double eta, double epsilon, double delta, double alpha);
MeasurementResult sim_ati(const ProjectorBuilder& builder, std::span<const uint64_t> samples, double eta,
                          double epsilon, double delta, double alpha, const QuantumRegister& reg, Rng& rng);
ProjectorBuilder builder_of(const ProjectiveFamily& family);

// One inequality lhs >= rhs - tolerance.
struct ClauseCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct InequalityReport {
  std::vector<ClauseCheck> clauses;
  bool holds() const;
  size_t violations() const;
};

constexpr double kClauseTolerance = 1e-7;

// Four single-register clauses: the two shifted-threshold comparisons, that
// the ATI is a valid projective measurement, and that TI is a projection whose
// accepted post-measurement state lies in the eigenvalue >= eta span.
InequalityReport verify_single_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta,
                                   const Matrix& rho, double tol = kClauseTolerance);

// Four joint clauses for k = 2 on a bipartite rho (first family on the first
// register, index = a * dim_b + b).
InequalityReport verify_multi_ati(const ProjectiveFamily& first, const ProjectiveFamily& second, double eta1,
                                  double eta2, double epsilon, double delta, const Matrix& rho,
                                  double tol = kClauseTolerance);

struct SimAtiOptions {
  uint64_t samples = 0;      // per list; 0 selects default_sample_count
  uint64_t sample_lists = 16;  // independent lists averaged per probability
};

// Four SimATI comparisons with threshold slack 5 eps and additive
// alpha + 4 delta. SimATI acceptance is averaged exactly over
// `sample_lists` lists drawn from the family's challenge distribution.
InequalityReport verify_sim_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta,
                                double alpha, const Matrix& rho, Rng& rng, const SimAtiOptions& options = {},
                                double tol = kClauseTolerance);

// Random family of `count` projectors with random ranks and weights.
ProjectiveFamily random_family(int num_qubits, size_t count, Rng& rng);

}  // namespace cplab::threshold
