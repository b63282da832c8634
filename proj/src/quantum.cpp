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

#include "cplab/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"

namespace cplab::quantum {
namespace {

constexpr double kCollapseFloor = 1e-15;

int qubits_for(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) throw DimensionMismatch("register dimension must be a power of two");
  int n = std::countr_zero(static_cast<uint64_t>(dim));
  if (n > kMaxQubits) throw CapacityError("quantum-sim: registers are limited to 14 qubits");
  return n;
}

void check_dims(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw DimensionMismatch("quantum dimension mismatch");
}

double hermitian_trace_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Matrix hermitian_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Samples an index from nonnegative weights summing to about one.
Eigen::Index sample_index(const Eigen::VectorXd& probs, Rng& rng) {
  double total = probs.sum();
  double u = rng.uniform() * total;
  double acc = 0.0;
  Eigen::Index last = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

}  // namespace

QuantumRegister QuantumRegister::pure(Vector amplitudes) {
  QuantumRegister r;
  r.num_qubits_ = qubits_for(amplitudes.size());
  r.rep_ = Representation::pure;
  r.psi_ = std::move(amplitudes);
  if (r.norm_deviation() > kTolerance) throw ParameterError("pure state is not normalised");
  return r;
}

QuantumRegister QuantumRegister::mixed(Matrix rho) {
  if (rho.rows() != rho.cols()) throw DimensionMismatch("density matrix must be square");
  QuantumRegister r;
  r.num_qubits_ = qubits_for(rho.rows());
  r.rep_ = Representation::mixed;
  r.rho_ = std::move(rho);
  if (!is_density_matrix(r.rho_)) throw ParameterError("matrix is not a density matrix");
  return r;
}

QuantumRegister QuantumRegister::mixed_unchecked(Matrix rho) {
  if (rho.rows() != rho.cols()) throw DimensionMismatch("density matrix must be square");
  QuantumRegister r;
  r.num_qubits_ = qubits_for(rho.rows());
  r.rep_ = Representation::mixed;
  r.rho_ = std::move(rho);
  return r;
}

QuantumRegister QuantumRegister::basis_state(int num_qubits, uint64_t index) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) throw CapacityError("quantum-sim: registers are limited to 14 qubits");
  Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (index >= static_cast<uint64_t>(dim)) throw DimensionMismatch("basis index out of range");
  Vector v = Vector::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return pure(std::move(v));
}

QuantumRegister QuantumRegister::maximally_mixed(int num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) throw CapacityError("quantum-sim: registers are limited to 14 qubits");
  Eigen::Index dim = Eigen::Index{1} << num_qubits;
  QuantumRegister r;
  r.num_qubits_ = num_qubits;
  r.rep_ = Representation::mixed;
  r.rho_ = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return r;
}

const Vector& QuantumRegister::amplitudes() const {
  if (!is_pure()) throw ParameterError("register is mixed");
  return psi_;
}

const Matrix& QuantumRegister::density_matrix() const {
  if (is_pure()) throw ParameterError("register is pure");
  return rho_;
}

Matrix QuantumRegister::density() const {
  if (is_pure()) return psi_ * psi_.adjoint();
  return rho_;
}

Eigen::VectorXd QuantumRegister::probabilities() const {
  if (is_pure()) return psi_.cwiseAbs2();
  return rho_.diagonal().real();
}

double QuantumRegister::norm_deviation() const {
  if (is_pure()) return std::abs(psi_.squaredNorm() - 1.0);
  return std::abs(rho_.trace().real() - 1.0);
}

nlohmann::json QuantumRegister::dump() const {
  nlohmann::json out;
  out["num_qubits"] = num_qubits_;
  nlohmann::json entries = nlohmann::json::array();
  if (is_pure()) {
    for (Eigen::Index i = 0; i < psi_.size(); ++i) {
      if (psi_[i] != Complex(0.0, 0.0)) entries.push_back({i, psi_[i].real(), psi_[i].imag()});
    }
    out["amplitudes"] = std::move(entries);
  } else {
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
      for (Eigen::Index j = 0; j < rho_.cols(); ++j) {
        if (rho_(i, j) != Complex(0.0, 0.0)) entries.push_back({i, j, rho_(i, j).real(), rho_(i, j).imag()});
      }
    }
    out["density"] = std::move(entries);
  }
  return out;
}

BinaryProjector BinaryProjector::diagonal(std::vector<uint8_t> mask) {
  qubits_for(static_cast<Eigen::Index>(mask.size()));
  BinaryProjector p;
  p.dim_ = static_cast<Eigen::Index>(mask.size());
  p.diagonal_ = true;
  for (auto& m : mask) m = m ? 1 : 0;
  p.mask_ = std::move(mask);
  return p;
}

BinaryProjector BinaryProjector::from_predicate(int num_qubits, const std::function<bool(uint64_t)>& keep) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) throw CapacityError("quantum-sim: registers are limited to 14 qubits");
  std::vector<uint8_t> mask(size_t{1} << num_qubits);
  for (size_t i = 0; i < mask.size(); ++i) mask[i] = keep(i) ? 1 : 0;
  return diagonal(std::move(mask));
}

BinaryProjector BinaryProjector::dense(Matrix projector, double tol) {
  if (projector.rows() != projector.cols()) throw DimensionMismatch("projector must be square");
  if (!is_projector(projector, tol)) throw ParameterError("matrix is not a Hermitian idempotent");
  BinaryProjector p;
  p.dim_ = projector.rows();
  p.diagonal_ = false;
  p.dense_ = std::move(projector);
  return p;
}

BinaryProjector BinaryProjector::dense_unchecked(Matrix projector) {
  if (projector.rows() != projector.cols()) throw DimensionMismatch("projector must be square");
  BinaryProjector p;
  p.dim_ = projector.rows();
  p.diagonal_ = false;
  p.dense_ = std::move(projector);
  return p;
}

Matrix BinaryProjector::matrix() const {
  if (!diagonal_) return dense_;
  Matrix m = Matrix::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) m(i, i) = mask_[static_cast<size_t>(i)];
  return m;
}

BinaryProjector BinaryProjector::complement() const {
  BinaryProjector p = *this;
  if (diagonal_) {
    for (auto& m : p.mask_) m = m ? 0 : 1;
  } else {
    p.dense_ = Matrix::Identity(dim_, dim_) - dense_;
  }
  return p;
}

double BinaryProjector::expectation(const QuantumRegister& reg) const {
  check_dims(dim_, reg.dimension());
  if (diagonal_) {
    Eigen::VectorXd probs = reg.probabilities();
    double s = 0.0;
    for (Eigen::Index i = 0; i < dim_; ++i) {
      if (mask_[static_cast<size_t>(i)]) s += probs[i];
    }
    return s;
  }
  if (reg.is_pure()) {
    const Vector& psi = reg.amplitudes();
    return psi.dot(dense_ * psi).real();
  }
  return (dense_ * reg.density_matrix()).trace().real();
}

Vector BinaryProjector::apply(const Vector& psi) const {
  check_dims(dim_, psi.size());
  if (!diagonal_) return dense_ * psi;
  Vector out = psi;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    if (!mask_[static_cast<size_t>(i)]) out[i] = 0.0;
  }
  return out;
}

Matrix BinaryProjector::sandwich(const Matrix& rho) const {
  check_dims(dim_, rho.rows());
  if (!diagonal_) return dense_ * rho * dense_;
  Matrix out = rho;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    if (mask_[static_cast<size_t>(i)]) continue;
    out.row(i).setZero();
    out.col(i).setZero();
  }
  return out;
}

QuantumRegister prepare_coset_state(const gf2::Gf2Subspace& A, const gf2::Gf2Vector& a1,
                                    const gf2::Gf2Vector& a2) {
  int d = A.ambient_dim();
  if (a1.dim() != d || a2.dim() != d) throw DimensionMismatch("coset shifts must match the subspace dimension");
  if (d > kMaxQubits) throw CapacityError("quantum-sim: registers are limited to 14 qubits");
  Vector psi = Vector::Zero(Eigen::Index{1} << d);
  double amp = 1.0 / std::sqrt(std::ldexp(1.0, A.dim()));
  for (uint64_t v : A.elements()) {
    double sign = parity(v & a2.word()) ? -1.0 : 1.0;
    psi[static_cast<Eigen::Index>(v ^ a1.word())] = sign * amp;
  }
  return QuantumRegister::pure(std::move(psi));
}

template <typename T>
static void wht_impl(std::span<T> data) {
  size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DimensionMismatch("Walsh-Hadamard length must be a power of two");
  for (size_t h = 1; h < n; h <<= 1) {
    for (size_t i = 0; i < n; i += h << 1) {
      for (size_t j = i; j < i + h; ++j) {
        T x = data[j];
        T y = data[j + h];
        data[j] = x + y;
        data[j + h] = x - y;
      }
    }
  }
}

void walsh_hadamard(std::span<Complex> data) { wht_impl(data); }
void walsh_hadamard(std::span<double> data) { wht_impl(data); }

QuantumRegister hadamard_all(const QuantumRegister& reg) {
  double n = static_cast<double>(reg.dimension());
  if (reg.is_pure()) {
    Vector psi = reg.amplitudes();
    walsh_hadamard(std::span<Complex>(psi.data(), static_cast<size_t>(psi.size())));
    psi /= std::sqrt(n);
    return QuantumRegister::pure(std::move(psi));
  }
  Matrix rho = reg.density_matrix();
  for (Eigen::Index c = 0; c < rho.cols(); ++c) {
    walsh_hadamard(std::span<Complex>(rho.col(c).data(), static_cast<size_t>(rho.rows())));
  }
  Matrix t = rho.transpose();
  for (Eigen::Index c = 0; c < t.cols(); ++c) {
    walsh_hadamard(std::span<Complex>(t.col(c).data(), static_cast<size_t>(t.rows())));
  }
  return QuantumRegister::mixed_unchecked(t.transpose() / n);
}

QuantumRegister collapse(const QuantumRegister& reg, const BinaryProjector& P, int outcome) {
  BinaryProjector Q = outcome ? P : P.complement();
  double p = Q.expectation(reg);
  if (p < kCollapseFloor) throw ImpossibleCollapse("requested measurement branch has zero probability");
  if (reg.is_pure()) return QuantumRegister::pure(Q.apply(reg.amplitudes()) / std::sqrt(p));
  return QuantumRegister::mixed_unchecked(Q.sandwich(reg.density_matrix()) / p);
}

MeasurementResult measure_binary(const QuantumRegister& reg, const BinaryProjector& P, Rng& rng) {
  double p1 = std::clamp(P.expectation(reg), 0.0, 1.0);
  MeasurementResult r;
  r.outcome = rng.uniform() < p1 ? 1 : 0;
  r.probability = r.outcome ? p1 : 1.0 - p1;
  r.collapsed = collapse(reg, P, r.outcome);
  return r;
}

uint64_t measure_computational(const QuantumRegister& reg, Rng& rng) {
  return static_cast<uint64_t>(sample_index(reg.probabilities(), rng));
}

RewindResult measure_and_rewind(const QuantumRegister& reg, const Matrix& U, Eigen::Index ancilla_dim,
                                const BinaryProjector& P, Rng& rng) {
  Eigen::Index n = reg.dimension();
  Eigen::Index joint = n * ancilla_dim;
  check_dims(U.rows(), joint);
  check_dims(U.cols(), joint);
  check_dims(P.dimension(), joint);
  // rho (x) |0><0| embedded at ancilla index 0.
  Matrix embed = Matrix::Zero(joint, n);
  for (Eigen::Index a = 0; a < n; ++a) embed(a * ancilla_dim, a) = 1.0;
  Matrix rho = reg.density();
  Matrix j = U * (embed * rho * embed.adjoint()) * U.adjoint();
  double p1 = std::clamp((P.matrix() * j).trace().real(), 0.0, 1.0);
  RewindResult r;
  r.outcome = rng.uniform() < p1 ? 1 : 0;
  r.outcome_probability = r.outcome ? p1 : 1.0 - p1;
  if (r.outcome_probability < kCollapseFloor) throw ImpossibleCollapse("measured branch has zero probability");
  BinaryProjector Q = r.outcome ? P : P.complement();
  Matrix post = U.adjoint() * Q.sandwich(j) * U / r.outcome_probability;
  r.rewound = QuantumRegister::mixed_unchecked(partial_trace_second(post, n, ancilla_dim));
  r.trace_distance_bound = std::sqrt(std::max(0.0, 1.0 - r.outcome_probability));
  return r;
}

RewindResult measure_and_rewind(const QuantumRegister& reg, const BinaryProjector& P, Rng& rng) {
  MeasurementResult m = measure_binary(reg, P, rng);
  RewindResult r;
  r.outcome = m.outcome;
  r.outcome_probability = m.probability;
  r.rewound = std::move(m.collapsed);
  r.trace_distance_bound = std::sqrt(std::max(0.0, 1.0 - r.outcome_probability));
  return r;
}

FunctionMeasurement measure_function_and_rewind(const QuantumRegister& reg,
                                                std::span<const uint64_t> labels, Rng& rng) {
  check_dims(static_cast<Eigen::Index>(labels.size()), reg.dimension());
  Eigen::VectorXd probs = reg.probabilities();
  Eigen::Index v = sample_index(probs, rng);
  FunctionMeasurement r;
  r.label = labels[static_cast<size_t>(v)];
  std::vector<uint8_t> mask(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) mask[i] = labels[i] == r.label;
  BinaryProjector Q = BinaryProjector::diagonal(std::move(mask));
  r.probability = std::clamp(Q.expectation(reg), 0.0, 1.0);
  r.rewound = collapse(reg, Q, 1);
  r.trace_distance_bound = std::sqrt(std::max(0.0, 1.0 - r.probability));
  return r;
}

FunctionMeasurement measure_function_and_rewind(const QuantumRegister& reg,
                                                const std::function<uint64_t(uint64_t)>& f,
                                                Rng& rng) {
  std::vector<uint64_t> labels(static_cast<size_t>(reg.dimension()));
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = f(i);
  return measure_function_and_rewind(reg, labels, rng);
}

double fidelity(const QuantumRegister& a, const QuantumRegister& b) {
  check_dims(a.dimension(), b.dimension());
  if (a.is_pure() && b.is_pure()) return std::norm(a.amplitudes().dot(b.amplitudes()));
  if (a.is_pure()) return a.amplitudes().dot(b.density_matrix() * a.amplitudes()).real();
  if (b.is_pure()) return b.amplitudes().dot(a.density_matrix() * b.amplitudes()).real();
  Matrix s = hermitian_sqrt(a.density_matrix());
  Matrix inner = s * b.density_matrix() * s;
  Matrix h = (inner + inner.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  check_dims(rho.rows(), sigma.rows());
  Matrix diff = rho - sigma;
  return 0.5 * hermitian_trace_norm((diff + diff.adjoint()) / 2.0);
}

double trace_distance(const QuantumRegister& a, const QuantumRegister& b) {
  if (a.is_pure() && b.is_pure()) {
    double f = std::norm(a.amplitudes().dot(b.amplitudes()));
    return std::sqrt(std::max(0.0, 1.0 - f));
  }
  return trace_distance(a.density(), b.density());
}

Matrix partial_trace_first(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b) {
  check_dims(rho.rows(), dim_a * dim_b);
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) out += rho.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

Matrix partial_trace_second(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b) {
  check_dims(rho.rows(), dim_a * dim_b);
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      Complex s = 0.0;
      for (Eigen::Index b = 0; b < dim_b; ++b) s += rho(i * dim_b + b, j * dim_b + b);
      out(i, j) = s;
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_unitary(const Matrix& U, double tol) {
  if (U.rows() != U.cols()) return false;
  return (U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool is_projector(const Matrix& P, double tol) {
  if (P.rows() != P.cols()) return false;
  if ((P - P.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return (P * P - P).cwiseAbs().maxCoeff() <= tol;
}

GentleMeasurementReport gentle_measurement_report(const Matrix& rho, const Matrix& U, const Matrix& pi0,
                                                  Eigen::Index ancilla_dim) {
  Eigen::Index n = rho.rows();
  Eigen::Index joint = n * ancilla_dim;
  check_dims(U.rows(), joint);
  check_dims(pi0.rows(), joint);
  Matrix embed = Matrix::Zero(joint, n);
  for (Eigen::Index a = 0; a < n; ++a) embed(a * ancilla_dim, a) = 1.0;
  Matrix j = U * (embed * rho * embed.adjoint()) * U.adjoint();
  Matrix pi1 = Matrix::Identity(joint, joint) - pi0;
  Matrix b0 = pi0 * j * pi0;
  Matrix b1 = pi1 * j * pi1;
  double p0 = b0.trace().real();
  GentleMeasurementReport r;
  r.epsilon = std::clamp(1.0 - p0, 0.0, 1.0);
  r.bound = std::sqrt(r.epsilon);
  Matrix undo0 = U.adjoint() * b0 * U;
  Matrix undo_all = U.adjoint() * (b0 + b1) * U;
  r.nonselective_distance = trace_distance(rho, partial_trace_second(undo_all, n, ancilla_dim));
  r.selective_distance =
      p0 > kCollapseFloor ? trace_distance(rho, partial_trace_second(undo0, n, ancilla_dim) / p0) : 1.0;
  r.holds = r.selective_distance <= r.bound + kTolerance && r.nonselective_distance <= r.bound + kTolerance;
  return r;
}

Matrix conditional_second(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b, const Matrix& M,
                          double& p) {
  check_dims(M.cols(), dim_a);
  Matrix op = kron(M, Matrix::Identity(dim_b, dim_b));
  Matrix post = op * rho * op.adjoint();
  p = post.trace().real();
  if (p < kCollapseFloor) throw UndefinedConditioning("measurement outcome has zero probability");
  return partial_trace_first(post, M.rows(), dim_b) / p;
}

namespace {

void check_complete(std::span<const Matrix> kraus, Eigen::Index dim) {
  Matrix s = Matrix::Zero(dim, dim);
  for (const auto& k : kraus) s += k.adjoint() * k;
  if ((s - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-8) {
    throw ParameterError("Kraus operators do not sum to the identity");
  }
}

}  // namespace

SimulprojReport verify_simulproj(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b, const Matrix& pi1,
                                 const Matrix& pi1_prime, std::span<const Matrix> kraus, size_t i) {
  check_dims(rho.rows(), dim_a * dim_b);
  check_dims(pi1.rows(), dim_a);
  check_dims(pi1_prime.rows(), dim_b);
  if (i >= kraus.size()) throw ParameterError("outcome index out of range");
  check_complete(kraus, dim_a);
  SimulprojReport r;
  r.epsilon = std::clamp(1.0 - (kron(pi1, pi1_prime) * rho).trace().real(), 0.0, 1.0);
  Matrix tau = conditional_second(rho, dim_a, dim_b, kraus[i], r.p_i);
  r.value = (pi1_prime * tau).trace().real();
  r.bound = 1.0 - 3.0 * std::sqrt(r.epsilon) / (2.0 * r.p_i);
  r.holds = r.value >= r.bound - kTolerance;
  return r;
}

ImpindepReport verify_impindep(const Matrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                               std::span<const Matrix> first, std::span<const Matrix> second, size_t i) {
  if (i >= first.size() || i >= second.size()) throw ParameterError("outcome index out of range");
  ImpindepReport r;
  for (size_t k = 0; k < std::min(first.size(), second.size()); ++k) {
    Matrix diff = first[k].adjoint() * first[k] - second[k].adjoint() * second[k];
    r.povm_deviation = std::max(r.povm_deviation, diff.cwiseAbs().maxCoeff());
  }
  Matrix t1 = conditional_second(rho, dim_a, dim_b, first[i], r.p_i_first);
  Matrix t2 = conditional_second(rho, dim_a, dim_b, second[i], r.p_i_second);
  r.distance = trace_distance(t1, t2);
  r.holds = r.povm_deviation > kTolerance || r.distance <= kTolerance;
  return r;
}

}  // namespace cplab::quantum
