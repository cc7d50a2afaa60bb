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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "explor/curiosity.hpp"
#include "explor/ids.hpp"

namespace explor {

class TargetUnreachable : public std::runtime_error {
 public:
  explicit TargetUnreachable(const Transition& t)
      : std::runtime_error("transition source " + std::to_string(t.prev.value) +
                           " is unreachable from the initial state"),
        target(t) {}
  Transition target;
};

// Deterministic automaton over abstract states, grown from observed
// transitions. A later observation for the same (state, action) overwrites the
// earlier successor and is counted as a conflict.
class Dfa {
 public:
  explicit Dfa(StateId initial);

  void add_transition(StateId prev, ActionId action, StateId next);

  std::optional<StateId> successor(StateId state, ActionId action) const;

  // States without outgoing transitions.
  std::set<StateId> terminal_states() const;

  // Fewest-action path from the initial state to `target` (empty when target
  // is the initial state); nullopt if unreachable. Edges have unit weight, so
  // this is a breadth-first search; neighbours are expanded in action-id
  // order, making the result deterministic.
  std::optional<std::vector<ActionId>> shortest_path_to(StateId target) const;

  // Recorded transitions ordered by descending peek-curiosity, ties broken by
  // ascending (prev, action, next).
  std::vector<Transition> ranked_by_curiosity(const VisitCounts& counts) const;

  // Shortest action sequence from the initial state ending with `target`.
  std::optional<std::vector<ActionId>> trace_to(const Transition& target) const;

  StateId initial() const { return initial_; }
  const std::set<StateId>& states() const { return states_; }
  const std::set<ActionId>& actions() const { return actions_; }
  const std::map<std::pair<StateId, ActionId>, StateId>& transitions() const { return delta_; }
  std::size_t size() const { return delta_.size(); }
  std::size_t conflict_count() const { return conflicts_; }

 private:
  StateId initial_;
  std::set<StateId> states_;
  std::set<ActionId> actions_;
  std::map<std::pair<StateId, ActionId>, StateId> delta_;
  std::size_t conflicts_ = 0;
};

// Picks the recorded transition with the highest curiosity and returns the
// shortest action trace that replays it from the initial state.
// Throws TargetUnreachable if that transition's source cannot be reached, and
// std::invalid_argument if the automaton has no transitions.
std::vector<ActionId> select_trace(const Dfa& dfa, const VisitCounts& counts);

// Graphviz rendering. Nodes are labelled "id\nurl"; edges with the action
// label and the transition's visit count.
std::string to_dot(const Dfa& dfa, const std::function<std::string(StateId)>& state_label,
                   const std::function<std::string(ActionId)>& action_label,
                   const VisitCounts& counts);

}  // namespace explor
