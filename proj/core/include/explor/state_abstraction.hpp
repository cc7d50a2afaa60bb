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
#include <string>
#include <string_view>
#include <vector>

#include "explor/env.hpp"
#include "explor/html.hpp"
#include "explor/ids.hpp"

namespace explor {

inline constexpr double kDefaultSimilarityThreshold = 0.8;

// A cluster of concrete pages judged to share business logic. The
// representative tag sequence is that of the first page and never changes.
struct AbstractState {
  StateId id;
  std::string canonical_url;
  TagSequence representative_tags;
  std::size_t visit_count = 0;
  std::size_t first_seen_step = 0;
};

// Operable, rendered, visible elements of `elements` as actions, in document
// order. Links whose target leaves `scope_host` are dropped. Locator ordinals
// are assigned over the whole listing (hidden elements included) so a
// backend can resolve them against the live DOM.
std::vector<ActionDescriptor> retrieve_valid_actions(const Page& page,
                                                     const std::vector<ElementInfo>& elements,
                                                     std::string_view scope_host);

// Locators for every element in the listing (operable or not), same order.
std::vector<Locator> assign_locators(const Page& page, const std::vector<ElementInfo>& elements);

// Ordered set of abstract states for one exploration session.
class StateRegistry {
 public:
  explicit StateRegistry(double similarity_threshold = kDefaultSimilarityThreshold);

  struct Match {
    StateId id;
    bool created = false;
  };

  // Maps `page` to a state: the first state (in insertion order) with the
  // same normalized URL and tag similarity strictly above the threshold, or a
  // fresh state built from this page. `step` is recorded for new states.
  Match assign(const Page& page, std::size_t step = 0);
  Match assign(std::string_view normalized_url, const TagSequence& tags, std::size_t step = 0);

  const std::vector<AbstractState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const AbstractState& at(StateId id) const { return states_.at(id.value); }
  double similarity_threshold() const { return threshold_; }

 private:
  std::vector<AbstractState> states_;
  double threshold_;
};

struct Abstraction {
  StateId state;
  bool created = false;
  std::vector<ActionDescriptor> actions;
};

// Pre-processing of a freshly observed page: state assignment plus the valid
// actions of this very page (never of the state's representative).
Abstraction abstract_page(const Page& page, const std::vector<ElementInfo>& elements,
                          StateRegistry& registry, std::string_view scope_host,
                          std::size_t step = 0);

// Normalized URL key used for state equality; unparseable URLs are kept as-is.
std::string state_url_key(std::string_view url);

}  // namespace explor
