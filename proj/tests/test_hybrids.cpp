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

#include "cplab/hybrids.hpp"

using namespace cplab;
using namespace cplab::protect;

TEST(Hybrids, MembershipPairDiffers) {
  Rng rng(1);
  for (int d : {4, 8}) {
    obf::Registry registry;
    auto r = check_pair(membership_pair(d, registry, rng));
    EXPECT_FALSE(r.result.equivalent);
    ASSERT_TRUE(r.result.counterexample.has_value());
    EXPECT_TRUE(r.as_expected());
  }
}

TEST(Hybrids, EverywherePuncturedDecapKeepsFunctionality) {
  Rng rng(2);
  obf::Registry registry;
  auto pair = protect_decap_pair(4, 4, true, registry, rng);
  EXPECT_EQ(pair.left.input_spec().total_bits(), 21);
  auto r = check_pair(pair);
  EXPECT_TRUE(r.result.equivalent);
  EXPECT_EQ(r.result.points_checked, uint64_t{1} << 21);
  EXPECT_TRUE(r.result.warnings.empty());
}

TEST(Hybrids, UnpuncturedDecapChangesFunctionality) {
  Rng rng(3);
  obf::Registry registry;
  auto r = check_pair(protect_decap_pair(3, 4, false, registry, rng));
  EXPECT_FALSE(r.result.equivalent);
  EXPECT_TRUE(r.as_expected());
}

TEST(Hybrids, AcePuncturedKeyPairs) {
  Rng rng(4);
  for (int n : {3, 4}) {
    obf::Registry registry;
    EXPECT_TRUE(check_pair(ace_encap_pair(n, true, registry, rng)).result.equivalent) << n;
    EXPECT_TRUE(check_pair(ace_decap_pair(n, true, registry, rng)).result.equivalent) << n;
    // Without the predicate the puncture point is exposed.
    EXPECT_FALSE(check_pair(ace_encap_pair(n, false, registry, rng)).result.equivalent) << n;
    EXPECT_FALSE(check_pair(ace_decap_pair(n, false, registry, rng)).result.equivalent) << n;
  }
}
