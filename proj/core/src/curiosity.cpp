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

#include "explor/curiosity.hpp"

#include <cmath>

namespace explor {

std::uint64_t VisitCounts::count(const Transition& t) const {
  auto it = counts_.find(t);
  return it == counts_.end() ? 1 : it->second;
}

double VisitCounts::peek(const Transition& t) const {
  return 1.0 / std::sqrt(static_cast<double>(count(t)));
}

double VisitCounts::observe(const Transition& t) {
  auto [it, inserted] = counts_.try_emplace(t, 1);
  const double reward = 1.0 / std::sqrt(static_cast<double>(it->second));
  ++it->second;
  return reward;
}

}  // namespace explor
