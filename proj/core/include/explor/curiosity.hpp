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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>

#include "explor/ids.hpp"

namespace explor {

struct Transition {
  StateId prev;
  ActionId action;
  StateId next;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Visit-count table N(prev, action, next) behind the count-based curiosity
// reward 1/sqrt(N). Absent entries stand for the initial count of 1.
class VisitCounts {
 public:
  // Reward from the current count, then count += 1. First call yields 1.0.
  double observe(const Transition& t);

  // Reward from the current count, no state change.
  double peek(const Transition& t) const;

  // Current N(t), 1 for never-observed transitions.
  std::uint64_t count(const Transition& t) const;

  // Only transitions observed at least once; ordered by (prev, action, next).
  const std::map<Transition, std::uint64_t>& entries() const { return counts_; }

 private:
  std::map<Transition, std::uint64_t> counts_;
};

}  // namespace explor
