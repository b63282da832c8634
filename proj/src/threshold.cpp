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

#include "cplab/threshold.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

#include "cplab/errors.hpp"

namespace cplab::threshold {
namespace {

void check_unit_open(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) throw ParameterError(std::string(what) + " must lie in (0, 1)");
}

double clamp_unit(double eta) { return std::clamp(eta, 0.0, 1.0); }

// Weighted sum of dense or diagonal projectors.
void accumulate(Matrix& E, const BinaryProjector& P, double w) {
  if (P.is_diagonal()) {
    const auto& mask = P.mask();
    for (Eigen::Index i = 0; i < E.rows(); ++i) {
      if (mask[static_cast<size_t>(i)]) E(i, i) += w;
    }
  } else {
    E += w * P.matrix();
  }
}

double trace_product(const Matrix& P, const Matrix& rho) { return (P * rho).trace().real(); }

ClauseCheck clause(std::string name, double lhs, double rhs, double tol) {
  return {std::move(name), lhs, rhs, lhs >= rhs - tol};
}

// Joint acceptance projector for two threshold measurements.
Matrix joint(const ThresholdMeasurement& a, const ThresholdMeasurement& b) {
  return quantum::kron(a.projector(), b.projector());
}

// Post-measurement state for outcome 1 of projector P, or nullopt when the
// outcome has negligible probability.
std::optional<Matrix> condition(const Matrix& P, const Matrix& rho) {
  double p = trace_product(P, rho);
  if (p < 1e-12) return std::nullopt;
  return Matrix(P * rho * P / p);
}

void check_rho(const Matrix& rho, Eigen::Index dim) {
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionMismatch("state dimension does not match the family");
}

// Ascending eigenpairs of a Hermitian matrix. Basis states outside the
// support of E are exact eigenvectors with eigenvalue 0, so only the
// supported block is decomposed.
void eigensystem(const Matrix& E, Eigen::VectorXd& values, Matrix& vectors) {
  const Eigen::Index dim = E.rows();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (!E.row(i).isZero(0.0) || !E.col(i).isZero(0.0)) support.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(support.size());
  Matrix block(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) block(a, b) = E(support[a], support[b]);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  if (k > 0) {
    es.compute(block);
    if (es.info() != Eigen::Success) throw Error("mixture eigendecomposition failed");
  }
  // (value, column) pairs: block eigenvectors first, then unit vectors.
  std::vector<std::pair<double, Eigen::Index>> order;
  for (Eigen::Index a = 0; a < k; ++a) order.emplace_back(es.eigenvalues()[a], a);
  for (Eigen::Index i = 0, next = 0; i < dim; ++i) {
    if (next < k && support[next] == i) {
      ++next;
      continue;
    }
    order.emplace_back(0.0, k + i);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  values.resize(dim);
  vectors = Matrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    auto [value, src] = order[static_cast<size_t>(c)];
    values[c] = value;
    if (src < k) {
      for (Eigen::Index a = 0; a < k; ++a) vectors(support[a], c) = es.eigenvectors()(a, src);
    } else {
      vectors(src - k, c) = 1.0;
    }
  }
}

}  // namespace

ProjectiveFamily::ProjectiveFamily(std::map<uint64_t, BinaryProjector> projectors, FiniteDistribution challenge_dist)
    : projectors_(std::move(projectors)), dist_(std::move(challenge_dist)) {
  if (projectors_.empty()) throw ParameterError("projective family is empty");
  dim_ = projectors_.begin()->second.dimension();
  if (dim_ < 1 || !std::has_single_bit(static_cast<uint64_t>(dim_)) || dim_ > (Eigen::Index{1} << kMaxQubits)) {
    throw CapacityError("threshold measurements support power-of-two dimensions up to 2^8");
  }
  for (const auto& [i, P] : projectors_) {
    if (P.dimension() != dim_) throw DimensionMismatch("projectors in a family must share one dimension");
  }
  for (uint64_t i : dist_.support()) {
    if (!projectors_.contains(i)) throw ParameterError("challenge " + std::to_string(i) + " has no projector");
  }
}

ProjectiveFamily ProjectiveFamily::indexed(std::vector<BinaryProjector> projectors, std::vector<double> weights) {
  std::map<uint64_t, BinaryProjector> map;
  std::vector<uint64_t> support;
  for (size_t i = 0; i < projectors.size(); ++i) {
    map.emplace(i, std::move(projectors[i]));
    support.push_back(i);
  }
  if (weights.empty()) return ProjectiveFamily(std::move(map), FiniteDistribution::uniform(std::move(support)));
  if (weights.size() != support.size()) throw DimensionMismatch("one weight per projector is required");
  return ProjectiveFamily(std::move(map), FiniteDistribution(std::move(support), std::move(weights)));
}

int ProjectiveFamily::num_qubits() const { return std::countr_zero(static_cast<uint64_t>(dim_)); }

const BinaryProjector& ProjectiveFamily::projector(uint64_t index) const {
  auto it = projectors_.find(index);
  if (it == projectors_.end()) throw ParameterError("unknown challenge index " + std::to_string(index));
  return it->second;
}

Matrix ProjectiveFamily::mixture() const {
  Matrix E = Matrix::Zero(dim_, dim_);
  for (size_t k = 0; k < dist_.size(); ++k) accumulate(E, projector(dist_.support()[k]), dist_.probs()[k]);
  return E;
}

ThresholdMeasurement ThresholdMeasurement::from_mixture(const Matrix& E, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("threshold must lie in [0, 1]");
  if (E.rows() != E.cols()) throw DimensionMismatch("mixture must be square");
  ThresholdMeasurement t;
  t.eta_ = eta;
  eigensystem(E, t.eigenvalues_, t.eigenvectors_);
  const Eigen::Index dim = E.rows();
  if (t.eigenvalues_.size() && (t.eigenvalues_[0] < -1e-9 || t.eigenvalues_[dim - 1] > 1.0 + 1e-9)) {
    throw ParameterError("mixture eigenvalues must lie in [0, 1]");
  }
  // Eigenvalues ascend, so the accepted block is a suffix.
  Eigen::Index first = dim;
  while (first > 0 && t.eigenvalues_[first - 1] >= eta - kTieTolerance) --first;
  t.rank_ = dim - first;
  const Matrix V = t.eigenvectors_.rightCols(t.rank_);
  t.projector_ = V * V.adjoint();
  t.measurement_ = BinaryProjector::dense_unchecked(t.projector_);
  return t;
}

double ThresholdMeasurement::acceptance(const Matrix& rho) const {
  check_rho(rho, dimension());
  return trace_product(projector_, rho);
}

double ThresholdMeasurement::acceptance(const QuantumRegister& reg) const { return measurement_.expectation(reg); }

ThresholdMeasurement build_ti(const ProjectiveFamily& family, double eta) {
  return ThresholdMeasurement::from_mixture(family.mixture(), eta);
}

MeasurementResult apply_ti(const ThresholdMeasurement& ti, const QuantumRegister& reg, Rng& rng) {
  if (reg.dimension() != ti.dimension()) throw DimensionMismatch("register does not match the measurement");
  return quantum::measure_binary(reg, ti.measurement(), rng);
}

ApproxThreshold build_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta) {
  check_unit_open(epsilon, "epsilon");
  check_unit_open(delta, "delta");
  return {build_ti(family, clamp_unit(eta)), epsilon, delta};
}

MeasurementResult apply_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta,
                            const QuantumRegister& reg, Rng& rng) {
  return apply_ti(build_ati(family, eta, epsilon, delta).ti, reg, rng);
}

uint64_t default_sample_count(double epsilon, double delta) {
  check_unit_open(epsilon, "epsilon");
  check_unit_open(delta, "delta");
  double l = std::ceil(std::log(2.0 / delta) / (epsilon * epsilon));
  return l >= static_cast<double>(kMaxDefaultSamples) ? kMaxDefaultSamples : static_cast<uint64_t>(l);
}

Matrix empirical_mixture(const ProjectorBuilder& builder, std::span<const uint64_t> samples) {
  if (samples.empty()) throw ParameterError("SimATI needs at least one challenge sample");
  // Repeated challenges share one projector build.
  std::map<uint64_t, uint64_t> counts;
  for (uint64_t s : samples) ++counts[s];
  Matrix E;
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (const auto& [s, c] : counts) {
    BinaryProjector P = builder(s);
    if (E.size() == 0) E = Matrix::Zero(P.dimension(), P.dimension());
    if (P.dimension() != E.rows()) throw DimensionMismatch("builder returned projectors of different dimensions");
    accumulate(E, P, inv * static_cast<double>(c));
  }
  return E;
}

ThresholdMeasurement sim_ati_measurement(const ProjectorBuilder& builder, std::span<const uint64_t> samples,
                                         double eta, double epsilon, double delta, double alpha) {
  check_unit_open(epsilon, "epsilon");
  check_unit_open(delta, "delta");
  check_unit_open(alpha, "alpha");
  return ThresholdMeasurement::from_mixture(empirical_mixture(builder, samples), clamp_unit(eta));
}

MeasurementResult sim_ati(const ProjectorBuilder& builder, std::span<const uint64_t> samples, double eta,
                          double epsilon, double delta, double alpha, const QuantumRegister& reg, Rng& rng) {
  return apply_ti(sim_ati_measurement(builder, samples, eta, epsilon, delta, alpha), reg, rng);
}

ProjectorBuilder builder_of(const ProjectiveFamily& family) {
  return [&family](uint64_t s) { return family.projector(s); };
}

bool InequalityReport::holds() const { return violations() == 0; }

size_t InequalityReport::violations() const {
  return static_cast<size_t>(std::count_if(clauses.begin(), clauses.end(), [](const auto& c) { return !c.holds; }));
}

InequalityReport verify_single_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta,
                                   const Matrix& rho, double tol) {
  check_rho(rho, family.dimension());
  const Matrix E = family.mixture();
  auto ti = [&](double t) { return ThresholdMeasurement::from_mixture(E, clamp_unit(t)); };
  auto ati = [&](double t) { return build_ati(family, t, epsilon, delta).ti; };
  InequalityReport r;
  r.clauses.push_back(
      clause("ati(eta-eps) >= ti(eta) - delta", ati(eta - epsilon).acceptance(rho), ti(eta).acceptance(rho) - delta, tol));
  r.clauses.push_back(
      clause("ti(eta-eps) >= ati(eta) - delta", ti(eta - epsilon).acceptance(rho), ati(eta).acceptance(rho) - delta, tol));

  // The shifted ATI must be a valid projective measurement; lhs is 1 minus
  // the worst idempotence / Hermiticity residual.
  const Matrix A = ati(eta - epsilon).projector();
  double residual = std::max((A * A - A).cwiseAbs().maxCoeff(), (A - A.adjoint()).cwiseAbs().maxCoeff());
  r.clauses.push_back(clause("ati(eta-eps) is a projective measurement", 1.0 - residual, 1.0, tol));

  // TI is a projection, and the accepted state is supported on eigenvalues >= eta.
  const ThresholdMeasurement T = ti(eta);
  const Matrix& P = T.projector();
  double lhs = 1.0 - (P * P - P).cwiseAbs().maxCoeff();
  if (auto post = condition(P, rho)) {
    double below = 0.0;
    const Eigen::Index dim = E.rows();
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (T.eigenvalues()[k] < eta - kTieTolerance) {
        below += (T.eigenvectors().col(k).adjoint() * (*post) * T.eigenvectors().col(k))(0, 0).real();
      }
    }
    lhs = std::min(lhs, 1.0 - std::abs(below));
  }
  r.clauses.push_back(clause("ti(eta) projects onto eigenvalues >= eta", lhs, 1.0, tol));
  return r;
}

InequalityReport verify_multi_ati(const ProjectiveFamily& first, const ProjectiveFamily& second, double eta1,
                                  double eta2, double epsilon, double delta, const Matrix& rho, double tol) {
  check_rho(rho, first.dimension() * second.dimension());
  const Matrix E1 = first.mixture();
  const Matrix E2 = second.mixture();
  const double k = 2.0;
  auto ti = [&](double shift) {
    return joint(ThresholdMeasurement::from_mixture(E1, clamp_unit(eta1 - shift)),
                 ThresholdMeasurement::from_mixture(E2, clamp_unit(eta2 - shift)));
  };
  auto ati = [&](double shift) {
    return joint(build_ati(first, eta1 - shift, epsilon, delta).ti, build_ati(second, eta2 - shift, epsilon, delta).ti);
  };
  InequalityReport r;
  r.clauses.push_back(clause("joint ati(eta-eps) >= joint ti(eta) - k delta", trace_product(ati(epsilon), rho),
                             trace_product(ti(0.0), rho) - k * delta, tol));

  // Conditioning on an outcome of probability zero is vacuous.
  auto post = condition(ati(0.0), rho);
  double c2 = post ? trace_product(ti(2.0 * epsilon), *post) : 1.0;
  double c3 = post ? trace_product(ati(3.0 * epsilon), *post) : 1.0;
  r.clauses.push_back(clause("after joint ati(eta): joint ti(eta-2eps) >= 1 - 2k delta", c2, 1.0 - 2.0 * k * delta, tol));
  r.clauses.push_back(clause("after joint ati(eta): joint ati(eta-3eps) >= 1 - 3k delta", c3, 1.0 - 3.0 * k * delta, tol));
  r.clauses.push_back(clause("joint ti(eta-eps) >= joint ati(eta) - k delta", trace_product(ti(epsilon), rho),
                             trace_product(ati(0.0), rho) - k * delta, tol));
  return r;
}

InequalityReport verify_sim_ati(const ProjectiveFamily& family, double eta, double epsilon, double delta,
                                double alpha, const Matrix& rho, Rng& rng, const SimAtiOptions& options,
                                double tol) {
  check_rho(rho, family.dimension());
  check_unit_open(alpha, "alpha");
  if (options.sample_lists == 0) throw ParameterError("at least one sample list is required");
  const uint64_t l = options.samples ? options.samples : default_sample_count(epsilon, delta);
  const double shift = 5.0 * epsilon;
  const ProjectorBuilder builder = builder_of(family);

  // Average exact acceptance over independent challenge lists.
  double sim_low = 0.0, sim_high = 0.0;
  std::vector<uint64_t> samples(l);
  for (uint64_t j = 0; j < options.sample_lists; ++j) {
    for (auto& s : samples) s = family.challenge_dist().sample(rng);
    const Matrix Ehat = empirical_mixture(builder, samples);
    sim_low += ThresholdMeasurement::from_mixture(Ehat, clamp_unit(eta - shift)).acceptance(rho);
    sim_high += ThresholdMeasurement::from_mixture(Ehat, clamp_unit(eta)).acceptance(rho);
  }
  sim_low /= static_cast<double>(options.sample_lists);
  sim_high /= static_cast<double>(options.sample_lists);

  const Matrix E = family.mixture();
  auto ti = [&](double t) { return ThresholdMeasurement::from_mixture(E, clamp_unit(t)).acceptance(rho); };
  auto ati = [&](double t) { return build_ati(family, t, epsilon, delta).ti.acceptance(rho); };
  const double slack = alpha + 4.0 * delta;
  InequalityReport r;
  r.clauses.push_back(clause("sim(eta-5eps) >= ati(eta) - alpha - 4delta", sim_low, ati(eta) - slack, tol));
  r.clauses.push_back(clause("ati(eta-5eps) >= sim(eta) - alpha - 4delta", ati(eta - shift), sim_high - slack, tol));
  r.clauses.push_back(clause("sim(eta-5eps) >= ti(eta) - alpha - 4delta", sim_low, ti(eta) - slack, tol));
  r.clauses.push_back(clause("ti(eta-5eps) >= sim(eta) - alpha - 4delta", ti(eta - shift), sim_high - slack, tol));
  return r;
}

ProjectiveFamily random_family(int num_qubits, size_t count, Rng& rng) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) throw CapacityError("threshold families are limited to 8 qubits");
  if (count == 0) throw ParameterError("family needs at least one projector");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  std::vector<BinaryProjector> projectors;
  std::vector<double> weights;
  double total = 0.0;
  for (size_t i = 0; i < count; ++i) {
    auto rank = static_cast<Eigen::Index>(rng.below(static_cast<uint64_t>(dim) + 1));
    projectors.push_back(BinaryProjector::dense(quantum::random_projector(dim, rank, rng), 1e-8));
    double w = rng.uniform_open();
    weights.push_back(w);
    total += w;
  }
  for (auto& w : weights) w /= total;
  return ProjectiveFamily::indexed(std::move(projectors), std::move(weights));
}

}  // namespace cplab::threshold
