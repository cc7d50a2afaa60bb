// Copyright 2026 The Explor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "explor/curiosity.hpp"
#include "explor/rng.hpp"

namespace explor {
namespace {

const Transition kT{StateId{0}, ActionId{1}, StateId{2}};
const Transition kU{StateId{2}, ActionId{3}, StateId{0}};

TEST(VisitCounts, FreshTransitionRewardsOne) {
  VisitCounts c;
  EXPECT_EQ(c.observe(kT), 1.0);
}

TEST(VisitCounts, FourthObservationIsHalf) {
  VisitCounts c;
  for (int i = 0; i < 3; ++i) c.observe(kT);
  EXPECT_EQ(c.observe(kT), 0.5);
}

TEST(VisitCounts, PeekHasNoEffect) {
  VisitCounts c;
  EXPECT_EQ(c.peek(kT), 1.0);
  c.observe(kT);
  EXPECT_NEAR(c.peek(kT), 0.70710678118654752, 1e-15);
  EXPECT_EQ(c.peek(kT), c.peek(kT));
  EXPECT_EQ(c.count(kT), 2u);
  EXPECT_NEAR(c.observe(kT), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(VisitCounts, AbsentMeansOneStoredAtLeastTwo) {
  VisitCounts c;
  EXPECT_EQ(c.count(kT), 1u);
  EXPECT_TRUE(c.entries().empty());
  c.observe(kT);
  ASSERT_EQ(c.entries().size(), 1u);
  EXPECT_EQ(c.entries().begin()->second, 2u);
}

TEST(VisitCounts, ScheduleMatchesInverseSqrt) {
  VisitCounts c;
  for (int k = 1; k <= 20; ++k) EXPECT_NEAR(c.observe(kT), 1.0 / std::sqrt(double(k)), 1e-12);
}

TEST(VisitCountsProperty, InterleavingKeepsSchedulesIndependent) {
  Rng rng(3);
  VisitCounts c;
  int nt = 0, nu = 0;
  double last_t = 2.0;
  for (int i = 0; i < 500; ++i) {
    if (rng.below(2)) {
      const double r = c.observe(kT);
      ASSERT_EQ(r, 1.0 / std::sqrt(double(++nt)));
      ASSERT_LT(r, last_t);
      last_t = r;
    } else {
      ASSERT_EQ(c.observe(kU), 1.0 / std::sqrt(double(++nu)));
    }
    if (rng.below(3) == 0) {
      const auto before = c.entries();
      c.peek(kT);
      c.peek(Transition{StateId{9}, ActionId{9}, StateId{9}});
      ASSERT_EQ(before, c.entries());
    }
  }
}

}  // namespace
}  // namespace explor
