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

#include <string>
#include <string_view>

#include "explor/env.hpp"
#include "explor/rng.hpp"

namespace explor {

// True for the input types generate_input knows how to produce.
bool is_supported_input_type(std::string_view input_type);

// Produces a random value that is valid for the declared input type and its
// min/max/maxlength/pattern/options constraints. Unknown types fall back to a
// short random printable ASCII string.
//
// A pattern is honoured by generating directly from the expression when it
// uses the supported subset (literals, escapes \d \w \s, classes, '.',
// groups, alternation, ?, *, +, {n}, {n,m}); values are checked against the
// full pattern and regenerated a bounded number of times otherwise.
std::string generate_input(const InputConstraints& constraints, Rng& rng);

// Checks a value against the same rules generate_input targets.
bool satisfies_constraints(const InputConstraints& constraints, std::string_view value);

// Random string matching `pattern` (anchored at both ends), or nullopt if the
// pattern uses syntax outside the supported subset.
std::optional<std::string> generate_from_pattern(std::string_view pattern, Rng& rng);

}  // namespace explor
