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
#include <map>
#include <set>
#include <vector>

#include "cplab/ace.hpp"
#include "cplab/ace_games.hpp"
#include "cplab/errors.hpp"
#include "cplab/gf2.hpp"
#include "cplab/resampler.hpp"

using namespace cplab;
using namespace cplab::ace;

namespace {

// Explicit Toeplitz product: out_i = XOR_j seed[i - j + in - 1] & x_j.
uint64_t oracle_extract(const BitString& seed, int in, int out, uint64_t x) {
  uint64_t y = 0;
  for (int i = 0; i < out; ++i) {
    int bit = 0;
    for (int j = 0; j < in; ++j) bit ^= seed.get(i - j + in - 1) & static_cast<int>((x >> j) & 1);
    y |= static_cast<uint64_t>(bit) << i;
  }
  return y;
}

}  // namespace

TEST(Extractor, ZeroSeedAndOracle) {
  Extractor zero(BitString(20 + 16 - 1), 20, 16);
  EXPECT_EQ(zero(0xABCDE), 0u);
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    int in = 8 + static_cast<int>(rng.below(40));
    int out = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(std::min(in, 32))));
    auto ext = Extractor::random(in, out, rng);
    for (int k = 0; k < 50; ++k) {
      uint64_t x = rng.bits(in);
      ASSERT_EQ(ext(x), oracle_extract(ext.seed(), in, out, x));
    }
  }
  EXPECT_THROW(zero(uint64_t{1} << 20), DimensionMismatch);
}

TEST(Extractor, UniformInputGivesUniformOutput) {
  // A full-rank Toeplitz map sends uniform inputs to exactly uniform outputs.
  Rng rng(2);
  int full_rank = 0;
  bool checked = false;
  for (int trial = 0; trial < 40; ++trial) {
    auto ext = Extractor::random(20, 16, rng);
    bool full = gf2::rref_words(20, ext.rows()).dim() == 16;
    full_rank += full;
    if (!full || checked) continue;
    std::vector<int> counts(1 << 16);
    for (uint64_t x = 0; x < (1u << 20); ++x) counts[ext(x)]++;
    double chi2 = 0;
    for (int c : counts) chi2 += (c - 16.0) * (c - 16.0) / 16.0;
    EXPECT_EQ(chi2, 0.0);
    checked = true;
  }
  EXPECT_TRUE(checked);
  EXPECT_GE(full_rank, 30);
}

TEST(AceSetup, ReproducibleAndShaped) {
  Rng r1(7), r2(7);
  auto a = setup(8, 128, r1);
  auto b = setup(8, 128, r2);
  EXPECT_EQ(a.k1, b.k1);
  EXPECT_EQ(a.k2, b.k2);
  EXPECT_EQ(a.ext.seed(), b.ext.seed());
  EXPECT_EQ(ciphertext_bits(8), 32);
  EXPECT_EQ(a.k1.output_bits(), 24);
  EXPECT_EQ(a.k2.input_bits(), 24);
  EXPECT_EQ(a.k2.output_bits(), 8);
  EXPECT_EQ(a.ext.out_bits(), 32);
  EXPECT_THROW(setup(17, 128, r1), ParameterError);
}

TEST(AceSetup, DistinctSetupsDistinctTables) {
  Rng rng(8);
  auto a = setup(4, 128, rng);
  auto b = setup(4, 128, rng);
  int same = 0;
  for (uint64_t m = 0; m < 16; ++m) same += encapsulation_of(a, m) == encapsulation_of(b, m);
  EXPECT_LT(same, 2);
}

TEST(AceScheme, RoundTripAndPuncturing) {
  Rng rng(9);
  obf::Registry reg;
  auto sk = setup(8, 128, rng);
  auto ek = gen_ek(sk, Predicate::never(), reg, rng);
  auto dk = gen_dk(sk, Predicate::never(), reg, rng);
  std::set<uint64_t> cts;
  for (uint64_t m = 0; m < 256; ++m) {
    auto ct = enc(ek, m);
    ASSERT_TRUE(ct.has_value());
    EXPECT_EQ(*ct, encapsulation_of(sk, m));
    EXPECT_EQ(dec(dk, *ct), m);
    cts.insert(*ct);
  }
  EXPECT_EQ(cts.size(), 256u);
  auto ek_p = gen_ek(sk, Predicate::point(77), reg, rng);
  auto dk_p = gen_dk(sk, Predicate::point(77), reg, rng);
  EXPECT_FALSE(enc(ek_p, 77).has_value());
  EXPECT_FALSE(dec(dk_p, encapsulation_of(sk, 77)).has_value());
  for (uint64_t m = 0; m < 256; ++m) {
    if (m != 77) EXPECT_EQ(enc(ek_p, m), enc(ek, m));
  }
  EXPECT_THROW(enc(ek, 256), DimensionMismatch);
  EXPECT_THROW(dec(dk, uint64_t{1} << 32), DimensionMismatch);
}

TEST(AceScheme, ImageIsSparseExhaustiveN4) {
  Rng rng(10);
  obf::Registry reg;
  auto sk = setup(4, 128, rng);
  auto dk = gen_dk(sk, Predicate::never(), reg, rng);
  int accepted = 0;
  for (uint64_t s = 0; s < (1u << 16); ++s) accepted += dec(dk, s).has_value();
  EXPECT_EQ(accepted, 16);
}

TEST(AceScheme, PrefixPredicates) {
  auto pre0 = Predicate::prefix(0, 4);
  auto pre1 = Predicate::prefix(1, 4);
  EXPECT_FALSE(pre0(0b0111));
  EXPECT_TRUE(pre0(0b1000));
  EXPECT_TRUE(pre1(0b0111));
  EXPECT_FALSE(pre1(0b1000));
}

TEST(AceCorrectness, ExhaustiveN4Subset) {
  Rng rng(11);
  auto sk = setup(4, 128, rng);
  std::vector<Predicate> preds{Predicate::never(), Predicate::point(5), Predicate::prefix(1, 4)};
  for (const auto& c : preds) {
    for (const auto& cp : preds) {
      obf::Registry reg;
      auto rep = check_correctness(sk, c, cp, reg, rng);
      EXPECT_TRUE(rep.ok()) << c.label << "/" << cp.label;
      EXPECT_EQ(rep.strings_checked, 1u << 16);
    }
  }
}

TEST(AceCorrectness, DetectsBrokenKeys) {
  // Decapsulating with a key from another setup must show violations.
  Rng rng(12);
  auto sk = setup(4, 128, rng);
  auto other = setup(4, 128, rng);
  obf::Registry reg;
  auto ek = gen_ek(sk, Predicate::never(), reg, rng);
  auto dk = gen_dk(other, Predicate::never(), reg, rng);
  int bad = 0;
  for (uint64_t m = 0; m < 16; ++m) bad += dec(dk, *enc(ek, m)) != m;
  EXPECT_GT(bad, 10);
}

TEST(Steg, RoundTripUniformSource) {
  Rng rng(13);
  obf::Registry reg;
  auto sk = setup(8, 128, rng, 48);
  auto ek = gen_ek(sk, Predicate::never(), reg, rng);
  auto dk = gen_dk(sk, Predicate::never(), reg, rng);
  auto D = SampleSource::uniform(48);
  const double eps = 0.1;
  int ok = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    uint64_t m = rng.bits(8);
    auto r = steg_enc(ek, m, D, eps, rng);
    if (r.sample && steg_dec(dk, *r.sample) == m) ++ok;
  }
  EXPECT_GE(ok / double(n), 1 - 2 * eps);
}

TEST(Steg, PuncturedMessageAndAdmissibility) {
  Rng rng(14);
  obf::Registry reg;
  auto sk = setup(4, 128, rng);
  auto ek = gen_ek(sk, Predicate::point(3), reg, rng);
  auto D = SampleSource::uniform(20);
  auto r = steg_enc(ek, 3, D, 0.1, rng);
  EXPECT_EQ(r.status, StegStatus::punctured);
  EXPECT_FALSE(r.sample.has_value());
  EXPECT_EQ(r.draws, 0u);
  EXPECT_THROW(steg_enc(ek, 2, SampleSource::uniform(12), 0.1, rng), ParameterError);
  EXPECT_THROW(steg_enc(ek, 2, SampleSource::uniform(40), 0.1, rng), DimensionMismatch);
}

TEST(Steg, RandomSamplesDecodeToBottom) {
  Rng rng(15);
  obf::Registry reg;
  auto sk = setup(8, 128, rng, 48);
  auto dk = gen_dk(sk, Predicate::never(), reg, rng);
  int bottoms = 0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) bottoms += !steg_dec(dk, rng.bits(48)).has_value();
  EXPECT_GE(bottoms / double(n), 1 - std::ldexp(1.0, -8));
  EXPECT_THROW(steg_dec(dk, uint64_t{1} << 48), DimensionMismatch);
}

TEST(Steg, ExactLawWithinEpsilonOfD) {
  // Target is Ext(s) for a fresh s ~ D.
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    auto sk = setup(1, 128, rng, 8);
    std::vector<uint64_t> support;
    std::vector<double> probs;
    double total = 0;
    for (uint64_t v = 0; v < 64; ++v) {
      support.push_back(v * 3 + 1);
      probs.push_back(1.0 + rng.uniform());
      total += probs.back();
    }
    for (auto& p : probs) p /= total;
    double s = 0;
    for (size_t i = 0; i + 1 < probs.size(); ++i) s += probs[i];
    probs.back() = 1 - s;
    FiniteDistribution D(support, probs);
    ASSERT_GE(D.min_entropy(), 4.0);
    resample::Fn f = [&](uint64_t x) { return sk.ext(x); };
    for (double eps : {0.05, 0.1}) {
      uint64_t t = resample::truncated_limit(eps, D.size());
      auto law = resample::truncated_law(D, f, t, resample::pushforward(D, f));
      EXPECT_LE(resample::exact_tv_distance(D, law), eps);
    }
  }
}

TEST(Steg, LiteralAndGeometricMatchExactLaw) {
  Rng rng(17);
  auto sk = setup(1, 128, rng, 8);
  obf::Registry reg;
  auto ek = gen_ek(sk, Predicate::never(), reg, rng);
  std::vector<uint64_t> support;
  for (uint64_t v = 0; v < 32; ++v) support.push_back(v * 5);
  auto dist = FiniteDistribution::uniform(support);
  auto D = SampleSource::from(dist, 8);
  uint64_t m = 1;
  uint64_t ict = *enc(ek, m);
  resample::Fn f = [&](uint64_t x) { return sk.ext(x); };
  StegOptions lit{StegStrategy::literal, 3};
  StegOptions geo{StegStrategy::geometric, 3};
  auto law = resample::truncated_law(dist, f, 3, {{ict, 1.0}});
  const int n = 30000;
  for (const auto& opt : {lit, geo}) {
    std::map<uint64_t, int> counts;
    int bottoms = 0;
    for (int i = 0; i < n; ++i) {
      auto r = steg_enc(ek, m, D, 0.1, rng, opt);
      if (r.sample) {
        counts[*r.sample]++;
      } else {
        ++bottoms;
      }
    }
    double pb = law.bottom;
    EXPECT_NEAR(bottoms / double(n), pb, 5 * std::sqrt(pb * (1 - pb) / n) + 1e-12);
    for (auto& [v, p] : law.mass) EXPECT_NEAR(counts[v] / double(n), p, 5 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(Steg, GeometricUniformPreimagesAreValid) {
  Rng rng(18);
  auto sk = setup(4, 128, rng, 24);
  obf::Registry reg;
  auto ek = gen_ek(sk, Predicate::never(), reg, rng);
  auto D = SampleSource::uniform(24);
  double q = preimage_weight(ek.ext, D, *enc(ek, 9));
  EXPECT_NEAR(q, std::ldexp(1.0, -16), 1e-18);
  for (int i = 0; i < 100; ++i) {
    auto r = steg_enc(ek, 9, D, 0.1, rng, {StegStrategy::geometric, 0});
    ASSERT_TRUE(r.sample.has_value());
    EXPECT_EQ(ek.ext(*r.sample), *enc(ek, 9));
  }
}

TEST(AceGames, TrivialDistinguishersHaveNoAdvantage) {
  Rng rng(19);
  const uint64_t trials = 300;
  auto C = Predicate::point(3);
  auto ph = puncture_hiding_game(4, C, Predicate::never(), C, distinguishers::reject_rate(16), trials, rng);
  EXPECT_LT(std::abs(ph.advantage()), 0.1);
  std::vector<uint64_t> msgs{3};
  auto pr = pr_ciphertext_game(4, C, C, msgs, distinguishers::decap_probe(), trials, rng);
  EXPECT_LT(std::abs(pr.advantage()), 0.1);
  auto lb = pr_ciphertext_game(4, C, C, msgs, distinguishers::low_bit(), trials, rng);
  EXPECT_LT(std::abs(lb.advantage()), 0.1);
  auto st = steg_ciphertext_game(4, C, C, msgs, SampleSource::uniform(24), 0.1, distinguishers::decap_probe(), trials,
                                 rng);
  EXPECT_LT(std::abs(st.advantage()), 0.1);
}

TEST(AceGames, InvalidChallengesRejected) {
  Rng rng(20);
  EXPECT_THROW(puncture_hiding_game(4, Predicate::never(), Predicate::never(), Predicate::point(1),
                                    distinguishers::random_guess(), 1, rng),
               ParameterError);
  std::vector<uint64_t> msgs{2};
  EXPECT_THROW(pr_ciphertext_game(4, Predicate::point(3), Predicate::point(3), msgs, distinguishers::low_bit(), 1, rng),
               ParameterError);
}
