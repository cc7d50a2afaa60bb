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

#pragma once

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "explor/ids.hpp"
#include "explor/rng.hpp"

namespace explor {

struct PolicyConfig {
  double lambda = 0.95;  // discount applied to the successor's best Q
  double tau = 1.0;      // Gumbel-softmax temperature
  double initial_q = 0.0;  // Q of a (state, action) pair when first registered
};

// Raised by select_action at a state without valid actions (a dead end).
class NoValidActions : public std::runtime_error {
 public:
  explicit NoValidActions(StateId s)
      : std::runtime_error("no valid actions at state " + std::to_string(s.value)), state(s) {}
  StateId state;
};

// Tabular Q-function with assignment updates and Gumbel-max action selection.
class QPolicy {
 public:
  explicit QPolicy(PolicyConfig config = {});

  // Replaces the valid-action set of `state`. Q-values of actions seen
  // before are kept (including ones dropped from the set); new actions start
  // at config().initial_q.
  void register_actions(StateId state, const std::vector<ActionId>& actions);

  // Q(prev, action) := reward + lambda * max_a' Q(next, a'), the max taken
  // over next's currently valid actions (0 if none). Returns the new value.
  double update(StateId prev, ActionId action, double reward, StateId next);

  // argmax_a Q(state, a) / tau + g_a with g_a ~ Gumbel(0, 1) i.i.d., which
  // samples a from softmax(Q(state, .) / tau). Noise is drawn in registration
  // order; exact ties go to the lowest action id.
  ActionId select_action(StateId state, Rng& rng) const;

  // Uniform choice among the valid actions (random-walk baseline).
  ActionId select_uniform(StateId state, Rng& rng) const;

  // Closed-form softmax(Q/tau) over the valid actions, in registration order.
  std::vector<std::pair<ActionId, double>> selection_probabilities(StateId state) const;

  double q(StateId state, ActionId action) const;
  double max_q(StateId state) const;
  const std::vector<ActionId>& valid_actions(StateId state) const;
  bool has_actions(StateId state) const { return !valid_actions(state).empty(); }

  // All stored entries ordered by (state, action).
  std::map<std::pair<StateId, ActionId>, double> entries() const;

  const PolicyConfig& config() const { return config_; }

 private:
  struct StateRow {
    std::vector<ActionId> valid;
    std::unordered_map<ActionId, double> q;
  };

  PolicyConfig config_;
  std::unordered_map<StateId, StateRow> rows_;
};

}  // namespace explor
