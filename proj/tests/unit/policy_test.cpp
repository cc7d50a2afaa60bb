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

#include "explor/policy.hpp"

namespace explor {
namespace {

const StateId s0{0}, s1{1}, s2{2};
const ActionId a1{1}, a2{2}, a3{3};

TEST(QPolicy, RegisterStartsAtZero) {
  QPolicy p;
  p.register_actions(s0, {a1, a2, a3});
  for (ActionId a : {a1, a2, a3}) EXPECT_EQ(p.q(s0, a), 0.0);
}

TEST(QPolicy, ReRegisterPreservesLearnedValues) {
  QPolicy p;
  p.register_actions(s0, {a1, a2});
  p.update(s0, a1, 0.7, s1);
  p.register_actions(s0, {a1, a2, a3});
  EXPECT_DOUBLE_EQ(p.q(s0, a1), 0.7);
  EXPECT_EQ(p.q(s0, a3), 0.0);
  // Dropped actions keep their value but are not selectable.
  p.register_actions(s0, {a2});
  EXPECT_DOUBLE_EQ(p.q(s0, a1), 0.7);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(p.select_action(s0, rng), a2);
}

TEST(QPolicy, EmptyRegistrationIsDeadEnd) {
  QPolicy p;
  p.register_actions(s0, {});
  Rng rng(1);
  EXPECT_THROW(p.select_action(s0, rng), NoValidActions);
  EXPECT_THROW(p.select_uniform(s0, rng), NoValidActions);
  EXPECT_THROW(p.select_action(s1, rng), NoValidActions);
}

TEST(QPolicy, UpdateWithTerminalSuccessor) {
  QPolicy p;
  p.register_actions(s0, {a1});
  EXPECT_DOUBLE_EQ(p.update(s0, a1, 1.0, s1), 1.0);
}

TEST(QPolicy, UpdateUsesSuccessorMax) {
  QPolicy p;
  p.register_actions(s0, {a1});
  p.register_actions(s1, {a2, a3});
  p.update(s1, a2, 2.0, s2);
  EXPECT_DOUBLE_EQ(p.update(s0, a1, 0.5, s1), 0.5 + 0.95 * 2.0);
}

TEST(QPolicy, ChainBackPropagation) {
  QPolicy p;
  p.register_actions(s0, {a1});
  p.register_actions(s1, {a2});
  p.register_actions(s2, {a3});
  p.update(s2, a3, 1.0, StateId{3});
  p.update(s1, a2, 1.0, s2);
  const double q = p.update(s0, a1, 1.0, s1);
  EXPECT_NEAR(q, 1.0 + 0.95 * (1.0 + 0.95 * 1.0), 1e-12);
  EXPECT_NEAR(q, 2.8525, 1e-12);
}

TEST(QPolicy, UpdateIsPureAssignment) {
  QPolicy p;
  p.register_actions(s0, {a1});
  p.register_actions(s1, {a2});
  p.update(s1, a2, 3.0, s2);
  const double first = p.update(s0, a1, 0.25, s1);
  EXPECT_EQ(p.update(s0, a1, 0.25, s1), first);
  // A smaller reward overwrites, no averaging.
  EXPECT_DOUBLE_EQ(p.update(s0, a1, 0.0, s2), 0.0);
}

TEST(QPolicy, MaxIgnoresDroppedActions) {
  QPolicy p;
  p.register_actions(s1, {a1, a2});
  p.update(s1, a1, 9.0, s2);
  p.register_actions(s1, {a2});
  EXPECT_EQ(p.max_q(s1), 0.0);
}

TEST(QPolicy, InitialValueIsConfigurable) {
  QPolicy p(PolicyConfig{0.95, 1.0, 20.0});
  p.register_actions(s0, {a1});
  EXPECT_EQ(p.q(s0, a1), 20.0);
}

TEST(QPolicy, RejectsBadConfig) {
  EXPECT_THROW(QPolicy(PolicyConfig{1.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(QPolicy(PolicyConfig{-0.1, 1.0}), std::invalid_argument);
  EXPECT_THROW(QPolicy(PolicyConfig{0.95, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(QPolicy(PolicyConfig{1.0, 1.0}));
  EXPECT_NO_THROW(QPolicy(PolicyConfig{0.0, 1.0}));
}

std::vector<double> frequencies(const QPolicy& p, StateId s, int n, std::uint64_t seed) {
  Rng rng(seed);
  const auto& valid = p.valid_actions(s);
  std::vector<double> f(valid.size());
  for (int i = 0; i < n; ++i) {
    const ActionId a = p.select_action(s, rng);
    f[std::find(valid.begin(), valid.end(), a) - valid.begin()] += 1.0 / n;
  }
  return f;
}

QPolicy with_q(std::vector<double> qs, double tau = 1.0) {
  QPolicy p(PolicyConfig{0.0, tau});
  std::vector<ActionId> ids;
  for (std::size_t i = 0; i < qs.size(); ++i) ids.push_back(ActionId{std::uint32_t(i + 1)});
  p.register_actions(s0, ids);
  // With lambda 0 the update writes the reward itself.
  for (std::size_t i = 0; i < qs.size(); ++i) p.update(s0, ids[i], qs[i], s1);
  return p;
}

TEST(QPolicy, EqualValuesAreFair) {
  const auto f = frequencies(with_q({0.0, 0.0}), s0, 100000, 5);
  EXPECT_NEAR(f[0], 0.5, 0.01);
}

TEST(QPolicy, SoftmaxOfLogThree) {
  const auto p = with_q({0.0, std::log(3.0)});
  const auto closed = p.selection_probabilities(s0);
  EXPECT_NEAR(closed[0].second, 0.25, 1e-12);
  EXPECT_NEAR(closed[1].second, 0.75, 1e-12);
  const auto f = frequencies(p, s0, 100000, 6);
  EXPECT_NEAR(f[0], 0.25, 0.01);
  EXPECT_NEAR(f[1], 0.75, 0.01);
}

TEST(QPolicy, SingleActionAlwaysChosen) {
  QPolicy p;
  p.register_actions(s0, {a2});
  Rng rng(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(p.select_action(s0, rng), a2);
}

TEST(QPolicy, SameSeedSameChoices) {
  const auto p = with_q({0.1, 0.5, -0.3, 1.2});
  Rng r1(77), r2(77);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(p.select_action(s0, r1), p.select_action(s0, r2));
}

TEST(QPolicyProperty, FrequenciesWithinThreeSigma) {
  Rng gen(31);
  const int n = 40000;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> qs(2 + gen.below(4));
    for (auto& q : qs) q = (gen.uniform01() - 0.5) * 4.0;
    const double tau = 0.5 + gen.uniform01() * 2.0;
    const auto p = with_q(qs, tau);
    const auto closed = p.selection_probabilities(s0);
    const auto f = frequencies(p, s0, n, 100 + trial);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const double pi = closed[i].second;
      EXPECT_NEAR(f[i], pi, 3.0 * std::sqrt(pi * (1 - pi) / n)) << "trial " << trial << " action " << i;
    }
  }
}

TEST(QPolicyProperty, ShiftInvariance) {
  Rng gen(32);
  const int n = 40000;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> qs(2 + gen.below(3));
    for (auto& q : qs) q = (gen.uniform01() - 0.5) * 3.0;
    const double c = (gen.uniform01() - 0.5) * 20.0;
    auto shifted = qs;
    for (auto& q : shifted) q += c;
    const auto base = with_q(qs), moved = with_q(shifted);
    const auto pb = base.selection_probabilities(s0), pm = moved.selection_probabilities(s0);
    const auto fm = frequencies(moved, s0, n, 200 + trial);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      EXPECT_NEAR(pb[i].second, pm[i].second, 1e-12);
      const double pi = pb[i].second;
      EXPECT_NEAR(fm[i], pi, 3.0 * std::sqrt(pi * (1 - pi) / n));
    }
  }
}

TEST(QPolicyProperty, NeverSelectsOutsideValidSet) {
  QPolicy p;
  Rng rng(41);
  for (int i = 0; i < 2000; ++i) {
    std::vector<ActionId> valid;
    for (std::uint32_t a = 1; a <= 8; ++a)
      if (rng.below(2)) valid.push_back(ActionId{a});
    if (valid.empty()) valid.push_back(ActionId{1 + std::uint32_t(rng.below(8))});
    p.register_actions(s0, valid);
    p.update(s0, valid[rng.below(valid.size())], rng.uniform01() * 5, s0);
    const ActionId a = p.select_action(s0, rng);
    ASSERT_NE(std::find(valid.begin(), valid.end(), a), valid.end());
  }
}

}  // namespace
}  // namespace explor
