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

#include "cplab/errors.hpp"
#include "cplab/games.hpp"

using namespace cplab;
using namespace cplab::protect;

TEST(SecurityGame, MeaningfulAdversaryAlwaysWins) {
  Rng rng(1);
  PrfEvalScheme scheme(6, 8);
  auto r = run_security_game(scheme, meaningful_adversary(), 500, rng);
  EXPECT_GE(r.rate(), 0.99);
}

TEST(SecurityGame, BlindGuessNearTrivialRate) {
  Rng rng(2);
  PrfEvalScheme scheme(6, 8);
  const uint64_t trials = 20000;
  auto r = run_security_game(scheme, blind_guess_adversary(), trials, rng);
  double p = scheme.p_triv();
  EXPECT_LE(std::abs(r.rate() - p), 3 * binomial_sigma(p, trials));
  EXPECT_THROW(run_security_game(scheme, blind_guess_adversary(), 0, rng), ParameterError);
}

TEST(SecurityGame, SinkSeesEveryTrialInOrder) {
  Rng rng(3);
  PrfEvalScheme scheme(4, 4);
  std::vector<uint64_t> seen;
  auto r = run_security_game(scheme, meaningful_adversary(), 20, rng,
                             [&](const TrialRecord& t) { seen.push_back(t.trial); });
  ASSERT_EQ(seen.size(), 20u);
  for (uint64_t i = 0; i < 20; ++i) EXPECT_EQ(seen[i], i);
  EXPECT_EQ(r.side_successes[0], r.successes);
}

TEST(PuncturingGame, PuncturedKeyUselessAtChallenge) {
  Rng rng(4);
  PrfEvalScheme scheme(6, 8);
  const uint64_t trials = 20000;
  auto r = run_malleable_puncturing_game(scheme, eval_punctured_adversary(), trials, rng);
  double p = scheme.p_triv();
  EXPECT_LE(std::abs(r.rate() - p), 3 * binomial_sigma(p, trials));
}

TEST(PuncturingGame, UnpuncturedControlWins) {
  Rng rng(5);
  PrfEvalScheme scheme(6, 8);
  EXPECT_EQ(run_malleable_puncturing_game(scheme, unpunctured_control_adversary(), 300, rng).rate(), 1.0);
}

TEST(PuncturingGame, CorrectnessExhaustiveOnTenBitDomain) {
  Rng rng(6);
  PrfEvalScheme scheme(10, 16);
  for (int trial = 0; trial < 5; ++trial) {
    auto inst = scheme.chal(rng);
    uint64_t x = scheme.sample_input(inst.st, rng);
    auto r = check_puncturing_correctness(scheme, inst, x);
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.unrelated, 1023u);
    EXPECT_EQ(r.related, 1u);
    EXPECT_EQ(r.bottom_on_related, 1u);
    // The literal C(x) reading fails almost everywhere.
    EXPECT_LT(r.agree_with_c_x, 10u);
  }
}

TEST(CopyProtection, ForwardingPirate) {
  Rng rng(7);
  PrfEvalScheme scheme(6, 8);
  auto r = run_copy_protection_game(scheme, make_pirate("forwarding"), 8, 2000, rng);
  EXPECT_EQ(r.side_rate(0), 1.0);
  double p = scheme.p_triv();
  EXPECT_LE(std::abs(r.side_rate(1) - p), 3 * binomial_sigma(p, 2000) + 1e-9);
  EXPECT_LE(r.rate(), r.side_rate(0));
}

TEST(CopyProtection, CloningPiratesBoundedBySingleSide) {
  Rng rng(8);
  PrfEvalScheme scheme(6, 8);
  const double fwd = run_copy_protection_game(scheme, make_pirate("forwarding"), 8, 300, rng).side_rate(0);
  for (const char* name : {"basis-cloner", "hadamard-cloner"}) {
    auto r = run_copy_protection_game(scheme, make_pirate(name), 8, 4000, rng);
    EXPECT_LE(r.rate(), fwd);
    EXPECT_LE(r.rate(), std::min(r.side_rate(0), r.side_rate(1)));
    // Each copy answers correctly iff the other basis lands in its coset: 1/16.
    EXPECT_LE(std::abs(r.side_rate(0) - 1.0 / 16), 3 * binomial_sigma(1.0 / 16, 4000));
  }
}

TEST(CopyProtection, SidesAreIsolated) {
  // Replacing side 2's register never changes side 1's answers.
  Rng rng(9);
  PrfEvalScheme scheme(6, 8);
  obf::Registry registry;
  auto inst = scheme.chal(rng);
  auto prog = issue(inst.key, 6, 8, 8, registry, rng);
  PirateInput in{&scheme, prog.pp, prog.P, prog.aux, prog.reg};
  for (const auto& name : pirate_names()) {
    Rng split_rng(10);
    auto a = make_pirate(name).split(in, split_rng);
    Rng split_rng2(10);
    auto b = make_pirate(name).split(in, split_rng2);
    b.second.reg = QuantumRegister::pure(quantum::random_state(b.second.reg.dimension(), rng));
    for (uint64_t ch = 0; ch < 64; ch += 7) {
      Rng r1(100 + ch), r2(100 + ch);
      auto ra = a.first.reg, rb = b.first.reg;
      EXPECT_EQ(a.first.answer(ch, ra, r1), b.first.answer(ch, rb, r2)) << name;
      (void)b.second.answer(ch, b.second.reg, r2);
    }
  }
}

TEST(StrongAntiPiracy, ForwardingPirateAcceptedOnOneSideOnly) {
  Rng rng(11);
  PrfEvalScheme scheme(6, 8);
  auto r = run_strong_antipiracy_game(scheme, make_pirate("forwarding"), 8, 0.1, 40, rng);
  EXPECT_NEAR(r.summary["mean_side1_acceptance"].get<double>(), 1.0, 1e-9);
  EXPECT_LE(r.summary["mean_joint_acceptance"].get<double>(), scheme.p_triv() + 0.05);
  EXPECT_FALSE(r.summary["degenerate_threshold"].get<bool>());
}

TEST(StrongAntiPiracy, BasisClonerSideAcceptanceIsCosetOverlap) {
  Rng rng(12);
  PrfEvalScheme scheme(6, 8);
  auto r = run_strong_antipiracy_game(scheme, make_pirate("basis-cloner"), 8, 0.1, 20, rng);
  // |<coset state|v>|^2 = 1/16 for every v in the primal coset.
  EXPECT_NEAR(r.summary["mean_side1_acceptance"].get<double>(), 1.0 / 16, 1e-9);
  EXPECT_NEAR(r.summary["mean_joint_acceptance"].get<double>(), 1.0 / 256, 1e-9);
}

TEST(StrongAntiPiracy, ZeroGammaFlaggedAndCapacityChecked) {
  Rng rng(13);
  PrfEvalScheme scheme(4, 4);
  auto r = run_strong_antipiracy_game(scheme, make_pirate("forwarding"), 4, 0.0, 5, rng);
  EXPECT_TRUE(r.summary["degenerate_threshold"].get<bool>());
  EXPECT_THROW(run_strong_antipiracy_game(scheme, make_pirate("forwarding"), 12, 0.1, 1, rng), CapacityError);
  PrfEvalScheme wide(4, 10);
  EXPECT_THROW(run_copy_protection_game(wide, make_pirate("forwarding"), 4, 1, rng), CapacityError);
}

TEST(Scheme, PrfEvalShapeAndRegistry) {
  auto s = make_scheme("prf-eval", 10, 8);
  EXPECT_EQ(s->input_min_entropy(), 10.0);
  EXPECT_DOUBLE_EQ(s->p_triv(), 1.0 / 256);
  EXPECT_EQ(scheme_names(), std::vector<std::string>{"prf-eval"});
  EXPECT_THROW(make_scheme("nope", 4, 4), ParameterError);
  EXPECT_THROW(PrfEvalScheme(13, 8), CapacityError);
  Rng rng(14);
  auto inst = s->chal(rng);
  auto dist = s->challenge_distribution(inst.st);
  ASSERT_EQ(dist.size(), 1024u);
  double total = 0.0;
  for (const auto& [c, w] : dist) {
    total += w;
    EXPECT_EQ(c.ak, inst.key.C(c.ch));
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}
