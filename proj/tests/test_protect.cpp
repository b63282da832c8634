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

#include <set>

#include "cplab/errors.hpp"
#include "cplab/protect.hpp"

using namespace cplab;
using namespace cplab::protect;

namespace {

// Independent membership oracles: enumerate A + a1, and test orthogonality of
// v + a2 against every element of A.
std::set<uint64_t> primal_members(const gf2::CosetInstance& c) {
  std::set<uint64_t> out;
  for (uint64_t a : c.A.elements()) out.insert(a ^ c.a1.word());
  return out;
}

bool in_dual(const gf2::CosetInstance& c, uint64_t v) {
  for (uint64_t a : c.A.elements()) {
    if (std::popcount(a & (v ^ c.a2.word())) % 2) return false;
  }
  return true;
}

struct Fixture {
  PrfEvalScheme scheme{6, 8};
  SchemeInstance inst;
  obf::Registry registry;
  ProtectedProgram prog;

  Fixture(int d, Rng& rng) : inst(scheme.chal(rng)) { prog = issue(inst.key, 6, 8, d, registry, rng); }
};

}  // namespace

TEST(Protect, MembershipProgramExhaustiveAtD4) {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    obf::Registry registry;
    auto g = gen_state(4, registry, rng);
    auto primal = primal_members(g.secret);
    for (uint64_t v = 0; v < 16; ++v) {
      EXPECT_EQ(*g.pp.eval({0, v}), primal.count(v) ? 1u : 0u);
      EXPECT_EQ(*g.pp.eval({1, v}), in_dual(g.secret, v) ? 1u : 0u);
    }
  }
}

TEST(Protect, RegisterSupportedOnPrimalCoset) {
  Rng rng(2);
  obf::Registry registry;
  auto g = gen_state(8, registry, rng);
  auto primal = primal_members(g.secret);
  auto probs = g.reg.probabilities();
  double mass = 0.0;
  for (uint64_t v : primal) mass += probs[static_cast<Eigen::Index>(v)];
  EXPECT_NEAR(mass, 1.0, 1e-12);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(primal.count(quantum::measure_computational(g.reg, rng)));
  auto h = quantum::hadamard_all(g.reg);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(in_dual(g.secret, quantum::measure_computational(h, rng)));
}

TEST(Protect, BranchesXorToCircuitAndRejectInvalid) {
  Rng rng(3);
  Fixture f(4, rng);
  auto primal = primal_members(f.prog.coset);
  for (uint64_t x = 0; x < 64; ++x) {
    for (uint64_t v = 0; v < 16; ++v) {
      for (uint64_t w = 0; w < 16; ++w) {
        auto y0 = f.prog.P.eval({x, 0, v});
        auto y1 = f.prog.P.eval({x, 1, w});
        EXPECT_EQ(y0.has_value(), primal.count(v) == 1);
        EXPECT_EQ(y1.has_value(), in_dual(f.prog.coset, w));
        if (y0 && y1) EXPECT_EQ(*y0 ^ *y1, f.inst.key.C(x));
      }
    }
  }
}

TEST(Protect, FreshMaskPerProtection) {
  Rng rng(4);
  Fixture f(4, rng);
  auto again = protect::protect(f.prog.pp, f.inst.key, 6, 8, f.registry, rng);
  uint64_t v = *f.prog.coset.primal().elements().begin();
  int differ = 0;
  for (uint64_t x = 0; x < 64; ++x) differ += f.prog.P.eval({x, 0, v}) != again.P.eval({x, 0, v});
  EXPECT_GT(differ, 32);
}

TEST(Protect, EvaluationCorrectAndReusableAtD8) {
  Rng rng(5);
  Fixture f(8, rng);
  const QuantumRegister original = f.prog.reg;
  QuantumRegister reg = f.prog.reg;
  for (uint64_t x = 0; x < 64; ++x) EXPECT_EQ(protected_eval(f.prog.P, reg, x, rng), f.inst.key.C(x));
  for (int i = 0; i < 100; ++i) {
    uint64_t x = rng.bits(6);
    EXPECT_EQ(protected_eval(f.prog.P, reg, x, rng), f.inst.key.C(x));
    EXPECT_GE(quantum::fidelity(reg, original), 1.0 - 1e-9);
  }
  QuantumRegister again = f.prog.reg;
  EXPECT_EQ(protected_scheme_eval(f.scheme, f.prog.P, f.prog.aux, again, 9, rng), f.inst.key.C(9));
}

TEST(Protect, CorruptedRegisterHitsBottom) {
  Rng rng(6);
  Fixture f(8, rng);
  auto primal = primal_members(f.prog.coset);
  uint64_t outside = 0;
  while (primal.count(outside)) ++outside;
  auto reg = QuantumRegister::basis_state(8, outside);
  EXPECT_FALSE(try_protected_eval(f.prog.P, reg, 3, rng).has_value());
  auto reg2 = QuantumRegister::basis_state(8, outside);
  EXPECT_THROW(protected_eval(f.prog.P, reg2, 3, rng), EvaluationFailure);
}

TEST(Protect, HonestAcceptanceIsTheCosetProjector) {
  Rng rng(7);
  Fixture f(8, rng);
  const auto& psi = f.prog.reg.amplitudes();
  Matrix expected = psi * psi.adjoint();
  for (uint64_t x : {0u, 17u, 63u}) {
    uint64_t ak = f.inst.key.C(x);
    auto op = evaluation_acceptance(f.prog.P, x, [ak](uint64_t y) { return y == ak; });
    EXPECT_EQ(op.support.size(), 16u);
    EXPECT_TRUE(op.is_projector());
    EXPECT_LT((op.dense(256) - expected).norm(), 1e-10);
    auto none = evaluation_acceptance(f.prog.P, x, [](uint64_t) { return false; });
    EXPECT_TRUE(none.support.empty());
  }
}

TEST(Protect, AcceptanceMatchesSimulatedEvaluation) {
  // Acceptance probability of an arbitrary state equals the exact
  // probability that evaluation outputs an accepted value.
  Rng rng(8);
  Fixture f(4, rng);
  for (int trial = 0; trial < 10; ++trial) {
    auto rho = quantum::random_density(16, 2, rng);
    uint64_t x = rng.bits(6);
    uint64_t ak = f.inst.key.C(x);
    auto op = evaluation_acceptance(f.prog.P, x, [ak](uint64_t y) { return y == ak; });
    double predicted = (op.dense(16) * rho).trace().real();
    int hits = 0;
    const int runs = 4000;
    for (int r = 0; r < runs; ++r) {
      auto reg = QuantumRegister::mixed(rho);
      auto y = try_protected_eval(f.prog.P, reg, x, rng);
      hits += y && *y == ak;
    }
    double sigma = std::sqrt(predicted * (1 - predicted) / runs) + 1e-9;
    EXPECT_LE(std::abs(hits / double(runs) - predicted), 4 * sigma + 1e-3);
  }
}

TEST(Protect, Validation) {
  Rng rng(9);
  obf::Registry registry;
  EXPECT_THROW(gen_state(6, registry, rng), ParameterError);
  EXPECT_THROW(gen_state(16, registry, rng), CapacityError);
  Fixture f(4, rng);
  auto reg = QuantumRegister::maximally_mixed(3);
  EXPECT_THROW(try_protected_eval(f.prog.P, reg, 0, rng), DimensionMismatch);
}
