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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cplab/bits.hpp"
#include "cplab/errors.hpp"
#include "cplab/quantum.hpp"

using namespace cplab;
using namespace cplab::quantum;
using gf2::Gf2Subspace;
using gf2::Gf2Vector;

namespace {

using V = Gf2Vector;

// Dense H^{(x)d} built from the 2x2 matrix, independent of the fast transform.
Matrix dense_hadamard(int d) {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < d; ++i) out = kron(h, out);
  return out;
}

// Direct evaluation of the coset-state sum over an explicit element list.
Vector oracle_coset(int d, const std::vector<uint64_t>& elems, uint64_t a1, uint64_t a2) {
  Vector v = Vector::Zero(Eigen::Index{1} << d);
  for (uint64_t e : elems) v[static_cast<Eigen::Index>(e ^ a1)] += (parity(e & a2) ? -1.0 : 1.0);
  return v / std::sqrt(static_cast<double>(elems.size()));
}

}  // namespace

TEST(CosetState, TwoQubitExample) {
  // Coordinate i is bit i, so (0,1) is index 2 and (1,1) is index 3.
  auto reg = prepare_coset_state(gf2::rref({V::from_coords({1, 0})}), V::from_coords({0, 1}),
                                 V::from_coords({1, 0}));
  const double s = 1.0 / std::sqrt(2.0);
  Vector expect = Vector::Zero(4);
  expect[2] = s;
  expect[3] = -s;
  EXPECT_LT((reg.amplitudes() - expect).norm(), 1e-12);
}

TEST(CosetState, TrivialCases) {
  auto one = prepare_coset_state(Gf2Subspace::zero(1), V::from_coords({1}), V::zero(1));
  EXPECT_EQ(one.amplitudes()[1], Complex(1.0));
  auto full = prepare_coset_state(Gf2Subspace::full(2), V::zero(2), V::zero(2));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(full.amplitudes()[i].real(), 0.5, 1e-12);
}

TEST(CosetState, MatchesOracleAndSupportIsExact) {
  Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 1 + static_cast<int>(rng.below(10));
    auto A = gf2::sample_subspace(d, static_cast<int>(rng.below(d + 1)), rng);
    auto a1 = V::random(d, rng), a2 = V::random(d, rng);
    auto reg = prepare_coset_state(A, a1, a2);
    EXPECT_LT((reg.amplitudes() - oracle_coset(d, A.elements(), a1.word(), a2.word())).norm(), 1e-12);
    gf2::Gf2Coset c(A, a1);
    for (Eigen::Index i = 0; i < reg.dimension(); ++i) {
      if (!c.contains_word(static_cast<uint64_t>(i))) ASSERT_EQ(reg.amplitudes()[i], Complex(0.0));
    }
    EXPECT_LT(reg.norm_deviation(), 1e-9);
  }
}

TEST(CosetState, CapacityLimit) {
  EXPECT_THROW(prepare_coset_state(Gf2Subspace::zero(15), V::zero(15), V::zero(15)), CapacityError);
  EXPECT_THROW(QuantumRegister::basis_state(15, 0), CapacityError);
}

TEST(Hadamard, SingleQubitAndInvolution) {
  auto plus = hadamard_all(QuantumRegister::basis_state(1, 0));
  EXPECT_NEAR(plus.amplitudes()[0].real(), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(plus.amplitudes()[1].real(), 1.0 / std::sqrt(2.0), 1e-12);
  Rng rng(4);
  auto reg = QuantumRegister::pure(random_state(32, rng));
  EXPECT_NEAR(fidelity(hadamard_all(hadamard_all(reg)), reg), 1.0, 1e-9);
}

TEST(Hadamard, MatchesDenseKronecker) {
  Rng rng(6);
  auto reg = QuantumRegister::pure(random_state(16, rng));
  Vector dense = dense_hadamard(4) * reg.amplitudes();
  EXPECT_LT((hadamard_all(reg).amplitudes() - dense).norm(), 1e-12);
  auto mixed = QuantumRegister::mixed(random_density(8, 3, rng));
  Matrix h = dense_hadamard(3);
  EXPECT_LT((hadamard_all(mixed).density_matrix() - h * mixed.density_matrix() * h).norm(), 1e-12);
}

TEST(Hadamard, CosetStateGoesToDualCoset) {
  Rng rng(8);
  for (int d = 1; d <= 10; ++d) {
    for (int trial = 0; trial < 6; ++trial) {
      auto A = gf2::sample_subspace(d, static_cast<int>(rng.below(d + 1)), rng);
      auto a1 = V::random(d, rng), a2 = V::random(d, rng);
      auto lhs = hadamard_all(prepare_coset_state(A, a1, a2));
      auto rhs = prepare_coset_state(gf2::dual(A), a2, a1);
      ASSERT_NEAR(fidelity(lhs, rhs), 1.0, 1e-9) << "d=" << d;
      ASSERT_LT(lhs.norm_deviation(), 1e-9);
    }
  }
}

TEST(Measurement, DeterministicCases) {
  Rng rng(1);
  auto p1 = BinaryProjector::from_predicate(1, [](uint64_t v) { return v == 1; });
  auto m = measure_binary(QuantumRegister::basis_state(1, 1), p1, rng);
  EXPECT_EQ(m.outcome, 1);
  EXPECT_DOUBLE_EQ(m.probability, 1.0);
  EXPECT_THROW(collapse(QuantumRegister::basis_state(1, 1), p1, 0), ImpossibleCollapse);
}

TEST(Measurement, HonestCosetStatePassesMembershipChecks) {
  Rng rng(3);
  for (int d : {4, 8, 12}) {
    auto inst = gf2::sample_coset_instance(d, rng);
    auto reg = prepare_coset_state(inst.A, inst.a1, inst.a2);
    auto in_primal = BinaryProjector::from_predicate(d, [&](uint64_t v) { return inst.primal().contains_word(v); });
    auto in_outer = BinaryProjector::from_predicate(d, [&](uint64_t v) { return inst.outer_primal().contains_word(v); });
    EXPECT_NEAR(in_primal.expectation(reg), 1.0, 1e-12);
    EXPECT_NEAR(in_outer.expectation(reg), 1.0, 1e-12);
    EXPECT_EQ(measure_binary(reg, in_primal, rng).outcome, 1);
    auto dual = hadamard_all(reg);
    auto in_dual = BinaryProjector::from_predicate(d, [&](uint64_t v) { return inst.dual_coset().contains_word(v); });
    EXPECT_NEAR(in_dual.expectation(dual), 1.0, 1e-12);
  }
}

TEST(Measurement, EmpiricalFrequencyMatchesBorn) {
  Rng rng(5);
  auto reg = QuantumRegister::pure(random_state(8, rng));
  auto P = BinaryProjector::dense(random_projector(8, 3, rng));
  double p = P.expectation(reg);
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) ones += measure_binary(reg, P, rng).outcome;
  EXPECT_NEAR(ones / double(n), p, 5 * std::sqrt(p * (1 - p) / n));
}

TEST(Measurement, DenseAndDiagonalAgree) {
  Rng rng(9);
  auto reg = QuantumRegister::mixed(random_density(16, 4, rng));
  auto diag = BinaryProjector::from_predicate(4, [](uint64_t v) { return parity(v) == 1; });
  auto dense = BinaryProjector::dense(diag.matrix());
  EXPECT_NEAR(diag.expectation(reg), dense.expectation(reg), 1e-12);
  EXPECT_LT((collapse(reg, diag, 1).density_matrix() - collapse(reg, dense, 1).density_matrix()).norm(), 1e-12);
}

TEST(Rewind, DeterministicMeasurementIsExact) {
  Rng rng(10);
  auto inst = gf2::sample_coset_instance(8, rng);
  auto reg = prepare_coset_state(inst.A, inst.a1, inst.a2);
  auto P = BinaryProjector::from_predicate(8, [&](uint64_t v) { return inst.outer_primal().contains_word(v); });
  auto r = measure_and_rewind(reg, P, rng);
  EXPECT_EQ(r.outcome, 1);
  EXPECT_NEAR(r.trace_distance_bound, 0.0, 1e-12);
  EXPECT_NEAR(fidelity(r.rewound, reg), 1.0, 1e-12);
}

TEST(Rewind, GentleBoundOverRandomInstances) {
  Rng rng(11);
  int selective_checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Eigen::Index dim = Eigen::Index{1} << (1 + rng.below(3));
    Eigen::Index anc = Eigen::Index{1} << rng.below(2);
    Matrix rho = random_density(dim, 1 + static_cast<Eigen::Index>(rng.below(dim)), rng);
    Matrix U = random_unitary(dim * anc, rng);
    Matrix pi0 = random_projector(dim * anc, 1 + static_cast<Eigen::Index>(rng.below(dim * anc)), rng);
    auto rep = gentle_measurement_report(rho, U, pi0, anc);
    EXPECT_TRUE(rep.holds) << "eps=" << rep.epsilon << " sel=" << rep.selective_distance
                           << " non=" << rep.nonselective_distance;
    selective_checked += rep.epsilon < 1.0;
  }
  EXPECT_GT(selective_checked, 100);
}

TEST(Rewind, SimulatedMeasurementMatchesReport) {
  // The sampled branch of measure_and_rewind agrees with the exact report.
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    auto reg = QuantumRegister::pure(random_state(4, rng));
    Matrix U = random_unitary(8, rng);
    auto P = BinaryProjector::dense(random_projector(8, 2, rng));
    auto r = measure_and_rewind(reg, U, 2, P, rng);
    auto rep = gentle_measurement_report(reg.density(), U, P.complement().matrix(), 2);
    double d = trace_distance(r.rewound, reg);
    EXPECT_LE(d, r.trace_distance_bound + 1e-9);
    if (r.outcome == 0) EXPECT_NEAR(d, rep.selective_distance, 1e-9);
  }
}

TEST(Rewind, FunctionMeasurementMatchesExplicitAncilla) {
  // Explicit construction: |v>|0> -> |v>|f(v)> with a 3-bit label register,
  // measure the label, uncompute, trace out.
  Rng rng(13);
  const int n = 3;
  const Eigen::Index dim = 8, anc = 8;
  std::vector<uint64_t> labels{5, 1, 5, 2, 1, 5, 7, 2};
  Matrix U = Matrix::Zero(dim * anc, dim * anc);
  for (Eigen::Index v = 0; v < dim; ++v) {
    for (Eigen::Index y = 0; y < anc; ++y) U(v * anc + (y ^ labels[v]), v * anc + y) = 1.0;
  }
  ASSERT_TRUE(is_unitary(U));
  auto reg = QuantumRegister::pure(random_state(dim, rng));
  for (int trial = 0; trial < 20; ++trial) {
    auto fm = measure_function_and_rewind(reg, labels, rng);
    auto P = BinaryProjector::from_predicate(2 * n, [&](uint64_t i) { return (i % anc) == fm.label; });
    Matrix j = U * kron(reg.density(), Matrix::Identity(anc, anc).col(0) * Matrix::Identity(anc, anc).row(0)) *
               U.adjoint();
    Matrix post = U.adjoint() * P.sandwich(j) * U;
    double p = post.trace().real();
    EXPECT_NEAR(p, fm.probability, 1e-12);
    Matrix expect = partial_trace_second(post, dim, anc) / p;
    EXPECT_LT(trace_distance(fm.rewound.density(), expect), 1e-9);
    EXPECT_LE(trace_distance(fm.rewound, reg), fm.trace_distance_bound + 1e-9);
  }
}

TEST(StateBounds, SimulprojTrivialCase) {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 0) = 1.0;
  Matrix rho = kron(a, a);
  Matrix pi = Matrix::Zero(4, 4);
  pi(0, 0) = 1.0;
  Rng rng(14);
  auto kraus = random_kraus(4, 3, rng);
  auto rep = verify_simulproj(rho, 4, 4, pi, pi, kraus, 0);
  EXPECT_NEAR(rep.epsilon, 0.0, 1e-12);
  EXPECT_NEAR(rep.bound, 1.0, 1e-9);
  EXPECT_TRUE(rep.holds);
}

TEST(StateBounds, SimulprojRandomInstances) {
  Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    Eigen::Index da = Eigen::Index{1} << (1 + rng.below(2));
    Eigen::Index db = Eigen::Index{1} << (1 + rng.below(2));
    // Bias the state towards the accepting subspace so the bound is not vacuous.
    Matrix p1 = random_projector(da, da - 1, rng);
    Matrix p2 = random_projector(db, db - 1, rng);
    Matrix proj = kron(p1, p2);
    Matrix rho = random_density(da * db, 2, rng);
    Matrix mix = 0.9 * proj * rho * proj / (proj * rho * proj).trace().real() + 0.1 * rho;
    auto kraus = random_kraus(da, 2, rng);
    auto rep = verify_simulproj(mix, da, db, p1, p2, kraus, rng.below(2));
    EXPECT_TRUE(rep.holds) << rep.value << " < " << rep.bound;
  }
}

TEST(StateBounds, SimulprojZeroOutcomeProbability) {
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  Matrix pi = Matrix::Identity(2, 2);
  Matrix m0 = Matrix::Zero(2, 2), m1 = Matrix::Zero(2, 2);
  m0(1, 1) = 1.0;
  m1(0, 0) = 1.0;
  std::vector<Matrix> kraus{m0, m1};
  EXPECT_THROW(verify_simulproj(rho, 2, 2, pi, pi, kraus, 0), UndefinedConditioning);
}

TEST(StateBounds, ImpindepRandomInstances) {
  Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Index da = Eigen::Index{1} << (1 + rng.below(2));
    Eigen::Index db = Eigen::Index{1} << (1 + rng.below(2));
    Matrix rho = random_density(da * db, 1 + static_cast<Eigen::Index>(rng.below(da * db)), rng);
    auto first = random_kraus(da, 3, rng);
    auto second = povm_equivalent_kraus(first, rng);
    auto rep = verify_impindep(rho, da, db, first, second, rng.below(3));
    EXPECT_LT(rep.povm_deviation, 1e-9);
    EXPECT_LT(rep.distance, 1e-9);
    EXPECT_NEAR(rep.p_i_first, rep.p_i_second, 1e-9);
    EXPECT_TRUE(rep.holds);
  }
}

TEST(StateBounds, NonEquivalentPovmsCanDiffer) {
  // Sanity: the check is not vacuous when the POVMs differ.
  Rng rng(17);
  Matrix rho = random_density(16, 4, rng);
  auto first = random_kraus(4, 2, rng);
  auto second = random_kraus(4, 2, rng);
  auto rep = verify_impindep(rho, 4, 4, first, second, 0);
  EXPECT_GT(rep.povm_deviation, 1e-3);
}

TEST(Registers, Validation) {
  Vector bad = Vector::Zero(4);
  bad[0] = 2.0;
  EXPECT_THROW(QuantumRegister::pure(bad), ParameterError);
  EXPECT_THROW(QuantumRegister::pure(Vector::Ones(3) / std::sqrt(3.0)), DimensionMismatch);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(QuantumRegister::mixed(neg), ParameterError);
  EXPECT_THROW(BinaryProjector::dense(Matrix::Identity(2, 2) * 0.5), ParameterError);
  auto mm = QuantumRegister::maximally_mixed(3);
  EXPECT_TRUE(is_density_matrix(mm.density_matrix()));
  EXPECT_THROW(mm.amplitudes(), ParameterError);
}

TEST(Registers, DumpListsNonzeroAmplitudes) {
  auto reg = prepare_coset_state(gf2::rref({V::from_coords({1, 0})}), V::from_coords({0, 1}),
                                 V::from_coords({1, 0}));
  auto j = reg.dump();
  EXPECT_EQ(j["num_qubits"], 2);
  EXPECT_EQ(j["amplitudes"].size(), 2u);
}

TEST(Registers, RandomUnitaryPreservesNorm) {
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix U = random_unitary(16, rng);
    EXPECT_TRUE(is_unitary(U));
    Vector v = U * random_state(16, rng);
    EXPECT_LT(QuantumRegister::pure(v).norm_deviation(), 1e-9);
  }
}
