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

#include "explor/dfa.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace explor {

Dfa::Dfa(StateId initial) : initial_(initial) { states_.insert(initial); }

void Dfa::add_transition(StateId prev, ActionId action, StateId next) {
  states_.insert(prev);
  states_.insert(next);
  actions_.insert(action);
  auto [it, inserted] = delta_.try_emplace({prev, action}, next);
  if (!inserted && it->second != next) {
    it->second = next;
    ++conflicts_;
  }
}

std::optional<StateId> Dfa::successor(StateId state, ActionId action) const {
  auto it = delta_.find({state, action});
  if (it == delta_.end()) return std::nullopt;
  return it->second;
}

std::set<StateId> Dfa::terminal_states() const {
  std::set<StateId> out = states_;
  for (const auto& [key, next] : delta_) out.erase(key.first);
  return out;
}

std::optional<std::vector<ActionId>> Dfa::shortest_path_to(StateId target) const {
  if (target == initial_) return std::vector<ActionId>{};
  // delta_ is sorted by (state, action), so each state's edges are contiguous
  // and already in action order.
  std::unordered_map<StateId, std::pair<StateId, ActionId>> parent;
  std::deque<StateId> frontier{initial_};
  parent.emplace(initial_, std::make_pair(initial_, kNoopAction));
  while (!frontier.empty()) {
    const StateId s = frontier.front();
    frontier.pop_front();
    for (auto it = delta_.lower_bound({s, ActionId{0}});
         it != delta_.end() && it->first.first == s; ++it) {
      const StateId next = it->second;
      if (!parent.emplace(next, std::make_pair(s, it->first.second)).second) continue;
      if (next == target) {
        std::vector<ActionId> path;
        for (StateId cur = target; cur != initial_;) {
          const auto& [from, action] = parent.at(cur);
          path.push_back(action);
          cur = from;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      frontier.push_back(next);
    }
  }
  return std::nullopt;
}

std::vector<Transition> Dfa::ranked_by_curiosity(const VisitCounts& counts) const {
  std::vector<std::pair<double, Transition>> scored;
  scored.reserve(delta_.size());
  for (const auto& [key, next] : delta_) {
    const Transition t{key.first, key.second, next};
    scored.emplace_back(counts.peek(t), t);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  std::vector<Transition> out;
  out.reserve(scored.size());
  for (auto& [score, t] : scored) out.push_back(t);
  return out;
}

std::optional<std::vector<ActionId>> Dfa::trace_to(const Transition& target) const {
  auto prefix = shortest_path_to(target.prev);
  if (!prefix) return std::nullopt;
  prefix->push_back(target.action);
  return prefix;
}

std::vector<ActionId> select_trace(const Dfa& dfa, const VisitCounts& counts) {
  const auto ranked = dfa.ranked_by_curiosity(counts);
  if (ranked.empty()) throw std::invalid_argument("select_trace on an automaton without transitions");
  auto trace = dfa.trace_to(ranked.front());
  if (!trace) throw TargetUnreachable(ranked.front());
  return *trace;
}

namespace {
std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}
}  // namespace

std::string to_dot(const Dfa& dfa, const std::function<std::string(StateId)>& state_label,
                   const std::function<std::string(ActionId)>& action_label,
                   const VisitCounts& counts) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  node [shape=box];\n";
  const auto terminals = dfa.terminal_states();
  for (StateId s : dfa.states()) {
    os << "  s" << s.value << " [label=\"" << escape_dot(state_label(s)) << "\"";
    if (s == dfa.initial()) os << ", style=bold";
    if (terminals.count(s)) os << ", peripheries=2";
    os << "];\n";
  }
  for (const auto& [key, next] : dfa.transitions()) {
    const Transition t{key.first, key.second, next};
    // Stored counts are one more than the number of observations.
    os << "  s" << key.first.value << " -> s" << next.value << " [label=\""
       << escape_dot(action_label(key.second)) << " (" << counts.count(t) - 1 << ")\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace explor
