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
#include <span>
#include <string>

#include "explor/html.hpp"

namespace explor {

// A maximal common block: a[a_pos .. a_pos+size) == b[b_pos .. b_pos+size).
struct MatchBlock {
  std::size_t a_pos = 0;
  std::size_t b_pos = 0;
  std::size_t size = 0;

  friend bool operator==(const MatchBlock&, const MatchBlock&) = default;
};

// Gestalt (Ratcliff/Obershelp) matching: find the longest common contiguous
// block, then recurse on the pieces to its left and right. Among equally long
// blocks the one starting earliest in `a` (then in `b`) is chosen, so results
// agree with the classic SequenceMatcher without junk heuristics.
// Returned blocks are ordered by position.
std::vector<MatchBlock> matching_blocks(std::span<const std::string> a,
                                        std::span<const std::string> b);

// 2*M / (|a| + |b|) where M is the total size of the matching blocks.
// The greedy block choice depends on argument order, so M is taken as the
// larger of the two orders; the result is symmetric.
// Two empty sequences are considered identical (1.0).
double sequence_similarity(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace explor
