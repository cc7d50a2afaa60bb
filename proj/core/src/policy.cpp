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

#include "explor/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace explor {
namespace {
const std::vector<ActionId> kNoActions;
}

QPolicy::QPolicy(PolicyConfig config) : config_(config) {
  if (!(config_.lambda >= 0.0 && config_.lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
  if (!(config_.tau > 0.0)) throw std::invalid_argument("tau must be positive");
}

void QPolicy::register_actions(StateId state, const std::vector<ActionId>& actions) {
  auto& row = rows_[state];
  row.valid = actions;
  for (ActionId a : actions) row.q.try_emplace(a, config_.initial_q);
}

double QPolicy::q(StateId state, ActionId action) const {
  auto it = rows_.find(state);
  if (it == rows_.end()) return 0.0;
  auto qi = it->second.q.find(action);
  return qi == it->second.q.end() ? 0.0 : qi->second;
}

double QPolicy::max_q(StateId state) const {
  auto it = rows_.find(state);
  if (it == rows_.end() || it->second.valid.empty()) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (ActionId a : it->second.valid) best = std::max(best, it->second.q.at(a));
  return best;
}

const std::vector<ActionId>& QPolicy::valid_actions(StateId state) const {
  auto it = rows_.find(state);
  return it == rows_.end() ? kNoActions : it->second.valid;
}

double QPolicy::update(StateId prev, ActionId action, double reward, StateId next) {
  const double value = reward + config_.lambda * max_q(next);
  rows_[prev].q[action] = value;
  return value;
}

ActionId QPolicy::select_action(StateId state, Rng& rng) const {
  const auto& valid = valid_actions(state);
  if (valid.empty()) throw NoValidActions(state);
  const auto& row = rows_.at(state);
  ActionId best = valid.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (ActionId a : valid) {
    const double score = row.q.at(a) / config_.tau + rng.gumbel();
    if (score > best_score || (score == best_score && a < best)) {
      best = a;
      best_score = score;
    }
  }
  return best;
}

ActionId QPolicy::select_uniform(StateId state, Rng& rng) const {
  const auto& valid = valid_actions(state);
  if (valid.empty()) throw NoValidActions(state);
  return valid[rng.below(valid.size())];
}

std::vector<std::pair<ActionId, double>> QPolicy::selection_probabilities(StateId state) const {
  std::vector<std::pair<ActionId, double>> out;
  const auto& valid = valid_actions(state);
  if (valid.empty()) return out;
  const auto& row = rows_.at(state);
  double top = -std::numeric_limits<double>::infinity();
  for (ActionId a : valid) top = std::max(top, row.q.at(a) / config_.tau);
  double total = 0.0;
  for (ActionId a : valid) {
    const double w = std::exp(row.q.at(a) / config_.tau - top);
    out.emplace_back(a, w);
    total += w;
  }
  for (auto& [a, p] : out) p /= total;
  return out;
}

std::map<std::pair<StateId, ActionId>, double> QPolicy::entries() const {
  std::map<std::pair<StateId, ActionId>, double> out;
  for (const auto& [s, row] : rows_)
    for (const auto& [a, v] : row.q) out.emplace(std::make_pair(s, a), v);
  return out;
}

}  // namespace explor
