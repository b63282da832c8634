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

#include <cmath>

#include "cplab/errors.hpp"
#include "cplab/quantum.hpp"

namespace cplab::quantum {
namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

}  // namespace

Vector random_state(Eigen::Index dim, Rng& rng) {
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw ParameterError("rank must lie in [1, dim]");
  Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  // QR of a Ginibre matrix with the phases of R fixed gives Haar measure.
  Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

Matrix random_projector(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (rank < 0 || rank > dim) throw ParameterError("rank must lie in [0, dim]");
  Matrix u = random_unitary(dim, rng).leftCols(rank);
  return u * u.adjoint();
}

std::vector<Matrix> random_kraus(Eigen::Index dim, int outcomes, Rng& rng) {
  if (outcomes < 1) throw ParameterError("need at least one outcome");
  std::vector<Matrix> gs;
  Matrix s = Matrix::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    gs.push_back(ginibre(dim, dim, rng));
    s += gs.back().adjoint() * gs.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((s + s.adjoint()) / 2.0);
  Eigen::VectorXd inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  Matrix s_inv_half = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  for (auto& g : gs) g = g * s_inv_half;
  return gs;
}

std::vector<Matrix> povm_equivalent_kraus(std::span<const Matrix> kraus, Rng& rng) {
  std::vector<Matrix> out;
  out.reserve(kraus.size());
  for (const auto& m : kraus) out.push_back(random_unitary(m.rows(), rng) * m);
  return out;
}

}  // namespace cplab::quantum
