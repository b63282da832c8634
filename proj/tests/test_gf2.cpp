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

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "cplab/errors.hpp"
#include "cplab/gf2.hpp"

using namespace cplab;
using namespace cplab::gf2;

namespace {

using V = Gf2Vector;

// Independent oracle: the span by brute-force closure over all subsets.
std::set<uint64_t> span_set(const std::vector<uint64_t>& gens) {
  std::set<uint64_t> out{0};
  for (uint64_t g : gens) {
    std::set<uint64_t> next = out;
    for (uint64_t x : out) next.insert(x ^ g);
    out = std::move(next);
  }
  return out;
}

std::set<uint64_t> as_set(const Gf2Subspace& s) {
  auto e = s.elements();
  return {e.begin(), e.end()};
}

int oracle_dot(uint64_t a, uint64_t b, int d) {
  int s = 0;
  for (int i = 0; i < d; ++i) s ^= static_cast<int>(((a >> i) & 1) & ((b >> i) & 1));
  return s;
}

std::set<uint64_t> oracle_dual(const std::set<uint64_t>& space, int d) {
  std::set<uint64_t> out;
  for (uint64_t w = 0; w < (uint64_t{1} << d); ++w) {
    bool ok = true;
    for (uint64_t v : space) ok = ok && oracle_dot(w, v, d) == 0;
    if (ok) out.insert(w);
  }
  return out;
}

}  // namespace

TEST(Gf2Rref, FullSpanOfTwoVectors) {
  auto s = rref({V::from_coords({1, 0}), V::from_coords({1, 1})});
  ASSERT_EQ(s.dim(), 2);
  EXPECT_EQ(s.basis()[0], V::from_coords({1, 0}));
  EXPECT_EQ(s.basis()[1], V::from_coords({0, 1}));
  EXPECT_EQ(s.pivots(), (std::vector<int>{0, 1}));
}

TEST(Gf2Rref, DuplicateRow) {
  auto s = rref({V::from_coords({1, 1}), V::from_coords({1, 1})});
  ASSERT_EQ(s.dim(), 1);
  EXPECT_EQ(s.basis()[0], V::from_coords({1, 1}));
  EXPECT_EQ(s.pivots(), (std::vector<int>{0}));
}

TEST(Gf2Rref, HandElimination) {
  auto s = rref({V::from_coords({1, 1, 0}), V::from_coords({0, 1, 1})});
  ASSERT_EQ(s.dim(), 2);
  EXPECT_EQ(s.basis()[0], V::from_coords({1, 0, 1}));
  EXPECT_EQ(s.basis()[1], V::from_coords({0, 1, 1}));
}

TEST(Gf2Rref, MixedDimensionsRejected) {
  EXPECT_THROW(rref({V::from_coords({1, 0}), V::from_coords({1, 1, 0})}), DimensionMismatch);
}

TEST(Gf2Rref, OrderIndependentAndMatchesClosure) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 1 + static_cast<int>(rng.below(10));
    int k = static_cast<int>(rng.below(7));
    std::vector<V> vecs;
    std::vector<uint64_t> words;
    for (int i = 0; i < k; ++i) {
      vecs.push_back(V::random(d, rng));
      words.push_back(vecs.back().word());
    }
    auto s = rref(d, vecs);
    std::vector<V> perm = vecs;
    std::reverse(perm.begin(), perm.end());
    if (!perm.empty()) std::rotate(perm.begin(), perm.begin() + rng.below(perm.size()), perm.end());
    EXPECT_EQ(s, rref(d, perm));
    EXPECT_EQ(as_set(s), span_set(words));
    for (size_t i = 0; i < s.rows().size(); ++i) {
      for (size_t j = 0; j < s.rows().size(); ++j) {
        EXPECT_EQ((s.rows()[j] >> s.pivots()[i]) & 1, i == j ? 1u : 0u);
      }
    }
  }
}

TEST(Gf2Dual, Examples) {
  EXPECT_EQ(dual(rref({V::from_coords({1, 0})})), rref({V::from_coords({0, 1})}));
  EXPECT_EQ(dual(Gf2Subspace::full(5)).dim(), 0);
  EXPECT_EQ(dual(rref({V::from_coords({1, 1, 0})})),
            rref({V::from_coords({1, 1, 0}), V::from_coords({0, 0, 1})}));
}

TEST(Gf2Dual, MatchesEnumerationAndIsInvolution) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 1 + static_cast<int>(rng.below(8));
    auto s = sample_subspace(d, static_cast<int>(rng.below(d + 1)), rng);
    auto dl = dual(s);
    EXPECT_EQ(as_set(dl), oracle_dual(as_set(s), d));
    EXPECT_EQ(dual(dl), s);
    EXPECT_EQ(s.dim() + dl.dim(), d);
  }
}

TEST(Gf2Coset, Membership) {
  Gf2Coset c(rref({V::from_coords({1, 0})}), V::from_coords({0, 1}));
  EXPECT_TRUE(coset_contains(c, V::from_coords({1, 1})));
  EXPECT_FALSE(coset_contains(c, V::from_coords({0, 0})));
  auto s = V::from_coords({1, 0, 1});
  EXPECT_TRUE(coset_contains(Gf2Coset(Gf2Subspace::zero(3), s), s));
  EXPECT_THROW(coset_contains(c, V::from_coords({1, 0, 0})), DimensionMismatch);
}

TEST(Gf2Coset, EqualityModuloSubspace) {
  auto a = rref({V::from_coords({1, 1, 0})});
  EXPECT_EQ(Gf2Coset(a, V::from_coords({1, 0, 0})), Gf2Coset(a, V::from_coords({0, 1, 0})));
  EXPECT_FALSE(Gf2Coset(a, V::from_coords({1, 0, 0})) == Gf2Coset(a, V::from_coords({0, 0, 1})));
}

TEST(Gf2Canonical, Examples) {
  EXPECT_EQ(canonical_rep(Gf2Coset(rref({V::from_coords({1, 1})}), V::from_coords({1, 0}))),
            V::from_coords({0, 1}));
  auto v = V::from_coords({1, 1, 0, 1});
  EXPECT_EQ(canonical_rep(Gf2Coset(Gf2Subspace::zero(4), v)), v);
  EXPECT_EQ(canonical_rep(Gf2Coset(Gf2Subspace::full(4), v)), V::zero(4));
}

TEST(Gf2Canonical, ConstantOverRepresentatives) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 2 + static_cast<int>(rng.below(8));
    auto s = sample_subspace(d, static_cast<int>(rng.below(d + 1)), rng);
    Gf2Coset c(s, V::random(d, rng));
    auto rep = canonical_rep(c);
    EXPECT_TRUE(c.contains(rep));
    EXPECT_EQ(rep.word() & s.pivot_mask(), 0u);
    for (uint64_t e : c.elements()) {
      EXPECT_EQ(canonical_rep(Gf2Coset(s, V(d, e))), rep);
    }
  }
}

TEST(Gf2Serialize, RoundTrip) {
  Rng rng(9);
  auto s = sample_subspace(12, 5, rng);
  EXPECT_EQ(Gf2Subspace::deserialize(s.serialize()), s);
  EXPECT_EQ(Gf2Subspace::deserialize(Gf2Subspace::zero(7).serialize()), Gf2Subspace::zero(7));
  EXPECT_THROW(Gf2Subspace::deserialize("nonsense"), ParameterError);
}

TEST(Gf2Solve, AgreesWithEnumeration) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    int vars = 1 + static_cast<int>(rng.below(9));
    int eqs = 1 + static_cast<int>(rng.below(6));
    std::vector<uint64_t> rows(eqs);
    for (auto& r : rows) r = rng.bits(vars);
    uint64_t rhs = rng.bits(eqs);
    std::set<uint64_t> expect;
    for (uint64_t x = 0; x < (uint64_t{1} << vars); ++x) {
      bool ok = true;
      for (int i = 0; i < eqs; ++i) ok = ok && oracle_dot(rows[i], x, vars) == static_cast<int>((rhs >> i) & 1);
      if (ok) expect.insert(x);
    }
    auto sol = solve(vars, rows, rhs);
    ASSERT_EQ(sol.consistent, !expect.empty());
    if (!sol.consistent) continue;
    std::set<uint64_t> got;
    for (uint64_t k : sol.kernel.elements()) got.insert(sol.particular ^ k);
    EXPECT_EQ(got, expect);
  }
}

TEST(Gf2Sampling, CosetInstanceShapesD4) {
  Rng rng(1);
  auto inst = sample_coset_instance(4, rng);
  EXPECT_EQ(inst.A.dim(), 2);
  EXPECT_EQ(inst.B1.dim(), 3);
  EXPECT_EQ(inst.B2.dim(), 1);
  EXPECT_TRUE(inst.A.is_subspace_of(inst.B1));
  EXPECT_TRUE(inst.B2.is_subspace_of(inst.A));
}

TEST(Gf2Sampling, CosetInstanceContainmentsExhaustive) {
  for (int d : {4, 8, 12}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      auto inst = sample_coset_instance(d, rng);
      ASSERT_TRUE(inst.A.is_subspace_of(inst.B1));
      ASSERT_TRUE(inst.B2.is_subspace_of(inst.A));
      for (uint64_t v : inst.primal().elements()) ASSERT_TRUE(inst.outer_primal().contains_word(v));
      for (uint64_t w : inst.dual_coset().elements()) ASSERT_TRUE(inst.outer_dual().contains_word(w));
    }
  }
}

TEST(Gf2Sampling, Reproducible) {
  Rng r1(42), r2(42);
  auto a = sample_coset_instance(8, r1);
  auto b = sample_coset_instance(8, r2);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.t_prime, b.t_prime);
}

TEST(Gf2Sampling, RejectsBadDimension) {
  Rng rng(1);
  EXPECT_THROW(sample_coset_instance(6, rng), ParameterError);
  EXPECT_THROW(sample_coset_instance(0, rng), ParameterError);
}

TEST(Gf2Sampling, SubspacesOfF2SquaredAreUniform) {
  // F_2^2 has three one-dimensional subspaces.
  Rng rng(8);
  std::map<uint64_t, int> counts;
  const int n = 30000;
  for (int i = 0; i < n; ++i) counts[sample_subspace(2, 1, rng).rows()[0]]++;
  ASSERT_EQ(counts.size(), 3u);
  for (auto& [row, c] : counts) EXPECT_NEAR(c / double(n), 1.0 / 3, 0.015);
}
