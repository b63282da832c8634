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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "cplab/gf2.hpp"
#include "cplab/rng.hpp"

namespace cplab::quantum {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

constexpr int kMaxQubits = 14;
constexpr double kTolerance = 1e-9;

class QuantumRegister {
 public:
  enum class Representation { pure, mixed };

  QuantumRegister() = default;

  // Both factories validate normalisation (and Hermiticity / PSD for mixed
  // states) to within kTolerance.
  static QuantumRegister pure(Vector amplitudes);
  static QuantumRegister mixed(Matrix rho);
  // No PSD check; for states produced by trace-preserving operations.
  static QuantumRegister mixed_unchecked(Matrix rho);
  static QuantumRegister basis_state(int num_qubits, uint64_t index);
  static QuantumRegister maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dimension() const { return Eigen::Index{1} << num_qubits_; }
  Representation representation() const { return rep_; }
  bool is_pure() const { return rep_ == Representation::pure; }

  // Throws for mixed registers.
  const Vector& amplitudes() const;
  const Matrix& density_matrix() const;
  // Density matrix for either representation.
  Matrix density() const;
  // Diagonal of the density matrix (computational basis probabilities).
  Eigen::VectorXd probabilities() const;

  // Norm or trace deviation from one.
  double norm_deviation() const;

  // {"num_qubits", "amplitudes": [[index, re, im], ...]} or, for mixed
  // states, "density": [[row, col, re, im], ...]. Zero entries are omitted.
  nlohmann::json dump() const;

 private:
  int num_qubits_ = 0;
  Representation rep_ = Representation::pure;
  Vector psi_;
  Matrix rho_;
};

class BinaryProjector {
 public:
  BinaryProjector() = default;

  // Diagonal projector: mask[i] != 0 keeps basis state i.
  static BinaryProjector diagonal(std::vector<uint8_t> mask);
  static BinaryProjector from_predicate(int num_qubits, const std::function<bool(uint64_t)>& keep);
  // Validates Hermiticity and idempotence to within `tol`.
  static BinaryProjector dense(Matrix projector, double tol = kTolerance);
  // No validation; for projectors assembled from orthonormal vectors.
  static BinaryProjector dense_unchecked(Matrix projector);

  Eigen::Index dimension() const { return dim_; }
  bool is_diagonal() const { return diagonal_; }
  const std::vector<uint8_t>& mask() const { return mask_; }
  Matrix matrix() const;
  BinaryProjector complement() const;

  // Tr[P rho].
  double expectation(const QuantumRegister& reg) const;

  // P applied to a vector or sandwiched around a density matrix.
  Vector apply(const Vector& psi) const;
  Matrix sandwich(const Matrix& rho) const;

 private:
  Eigen::Index dim_ = 0;
  bool diagonal_ = true;
  std::vector<uint8_t> mask_;
  Matrix dense_;
};

// sum_{v in A} (-1)^{<v, a2>} |v + a1> / sqrt(|A|).
QuantumRegister prepare_coset_state(const gf2::Gf2Subspace& A, const gf2::Gf2Vector& a1,
                                    const gf2::Gf2Vector& a2);

// In-place unnormalised Walsh-Hadamard transform; size must be a power of two.
void walsh_hadamard(std::span<Complex> data);
void walsh_hadamard(std::span<double> data);

// H on every qubit. Mixed states are transformed as H rho H.
QuantumRegister hadamard_all(const QuantumRegister& reg);

// Outcome 1 means the projector's subspace.
struct MeasurementResult {
  int outcome = 0;
  QuantumRegister collapsed;
  double probability = 0.0;  // probability of the observed outcome
};

MeasurementResult measure_binary(const QuantumRegister& reg, const BinaryProjector& P, Rng& rng);
// Deterministic collapse onto one outcome; throws ImpossibleCollapse when the
// branch has probability below 1e-15.
QuantumRegister collapse(const QuantumRegister& reg, const BinaryProjector& P, int outcome);

// Computational-basis measurement.
uint64_t measure_computational(const QuantumRegister& reg, Rng& rng);

struct RewindResult {
  int outcome = 0;
  QuantumRegister rewound;
  double outcome_probability = 0.0;
  double trace_distance_bound = 0.0;  // sqrt(1 - outcome_probability)
};

// Appends an ancilla of dimension ancilla_dim in |0>, applies U, measures
// {I - P, P} on the joint space (system index major), undoes U and traces out
// the ancilla. The rewound state is conditioned on the observed outcome.
RewindResult measure_and_rewind(const QuantumRegister& reg, const Matrix& U,
                                Eigen::Index ancilla_dim, const BinaryProjector& P, Rng& rng);
// No ancilla and U = I.
RewindResult measure_and_rewind(const QuantumRegister& reg, const BinaryProjector& P, Rng& rng);

struct FunctionMeasurement {
  uint64_t label = 0;
  QuantumRegister rewound;
  double probability = 0.0;
  double trace_distance_bound = 0.0;
};

// Coherently computes labels[v] into an ancilla, measures the ancilla and
// uncomputes. Equivalent to projecting onto the preimage of the observed
// label; `labels` has one entry per basis state.
FunctionMeasurement measure_function_and_rewind(const QuantumRegister& reg,
                                                std::span<const uint64_t> labels, Rng& rng);
FunctionMeasurement measure_function_and_rewind(const QuantumRegister& reg,
                                                const std::function<uint64_t(uint64_t)>& f,
                                                Rng& rng);

// Uhlmann fidelity (squared form); exact overlap when either side is pure.
double fidelity(const QuantumRegister& a, const QuantumRegister& b);
// Half the trace norm of the difference.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const QuantumRegister& a, const QuantumRegister& b);

// Index convention for bipartite matrices: i = a * dim_b + b.
Matrix partial_trace_first(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b);
Matrix partial_trace_second(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b);
Matrix kron(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& U, double tol = kTolerance);
bool is_density_matrix(const Matrix& rho, double tol = kTolerance);
bool is_projector(const Matrix& P, double tol = kTolerance);

struct GentleMeasurementReport {
  double epsilon = 0.0;                 // probability of outcome 1
  double bound = 0.0;                   // sqrt(epsilon)
  double selective_distance = 0.0;      // rewound state given outcome 0
  double nonselective_distance = 0.0;   // rewound state averaged over outcomes
  bool holds = false;
};

// Exact check of the gentle-measurement bound for (rho, U, Pi0) with an
// ancilla of dimension ancilla_dim; Pi0 acts on the joint space.
GentleMeasurementReport gentle_measurement_report(const Matrix& rho, const Matrix& U,
                                                  const Matrix& pi0, Eigen::Index ancilla_dim);

struct SimulprojReport {
  double epsilon = 0.0;   // 1 - Tr[(Pi1 x Pi1') rho]
  double p_i = 0.0;
  double value = 0.0;     // Tr[Pi1' tau]
  double bound = 0.0;     // 1 - 3 sqrt(epsilon) / (2 p_i)
  bool holds = false;
};

// tau is the second register after applying Kraus operator kraus[i] to the
// first register and conditioning on outcome i.
SimulprojReport verify_simulproj(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                                 const Matrix& pi1, const Matrix& pi1_prime,
                                 std::span<const Matrix> kraus, size_t i);

struct ImpindepReport {
  double distance = 0.0;       // trace distance of the two conditional states
  double p_i_first = 0.0;
  double p_i_second = 0.0;
  double povm_deviation = 0.0; // max norm of M_i^dag M_i - E_i^dag E_i
  bool holds = false;
};

ImpindepReport verify_impindep(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                               std::span<const Matrix> first, std::span<const Matrix> second,
                               size_t i);

// Conditional state of the second register after Kraus operator M on the
// first; returns the outcome probability through p.
Matrix conditional_second(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                          const Matrix& M, double& p);

// Random instances for property checks.
Vector random_state(Eigen::Index dim, Rng& rng);
Matrix random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng);
Matrix random_unitary(Eigen::Index dim, Rng& rng);
Matrix random_projector(Eigen::Index dim, Eigen::Index rank, Rng& rng);
// Complete set of `outcomes` Kraus operators: G_i S^{-1/2} with S = sum G^dag G.
std::vector<Matrix> random_kraus(Eigen::Index dim, int outcomes, Rng& rng);
// Same POVM, different implementation: E_i = V_i M_i with random unitaries V_i.
std::vector<Matrix> povm_equivalent_kraus(std::span<const Matrix> kraus, Rng& rng);

}  // namespace cplab::quantum
