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

#include "explor/similarity.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace explor {
namespace {

// Maps tag names to small integers so the inner loop compares ints.
std::pair<std::vector<int>, std::vector<int>> intern(std::span<const std::string> a,
                                                     std::span<const std::string> b) {
  std::unordered_map<std::string_view, int> ids;
  auto code = [&](const std::string& s) {
    auto [it, inserted] = ids.try_emplace(s, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<int> ia, ib;
  ia.reserve(a.size());
  ib.reserve(b.size());
  for (const auto& s : a) ia.push_back(code(s));
  for (const auto& s : b) ib.push_back(code(s));
  return {std::move(ia), std::move(ib)};
}

MatchBlock longest_match(const std::vector<int>& a, const std::vector<int>& b,
                         std::size_t alo, std::size_t ahi, std::size_t blo,
                         std::size_t bhi, std::vector<std::size_t>& prev,
                         std::vector<std::size_t>& cur) {
  MatchBlock best{alo, blo, 0};
  const std::size_t width = bhi - blo;
  std::fill(prev.begin(), prev.begin() + width + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    cur[0] = 0;
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t col = j - blo + 1;
      if (a[i] == b[j]) {
        const std::size_t k = prev[col - 1] + 1;
        cur[col] = k;
        if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
      } else {
        cur[col] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::vector<MatchBlock> matching_blocks(std::span<const std::string> a_tags,
                                        std::span<const std::string> b_tags) {
  auto [a, b] = intern(a_tags, b_tags);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::vector<MatchBlock> blocks;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> todo;
  todo.emplace_back(0, a.size(), 0, b.size());
  while (!todo.empty()) {
    auto [alo, ahi, blo, bhi] = todo.back();
    todo.pop_back();
    if (alo >= ahi || blo >= bhi) continue;
    const MatchBlock m = longest_match(a, b, alo, ahi, blo, bhi, prev, cur);
    if (m.size == 0) continue;
    blocks.push_back(m);
    todo.emplace_back(alo, m.a_pos, blo, m.b_pos);
    todo.emplace_back(m.a_pos + m.size, ahi, m.b_pos + m.size, bhi);
  }
  std::sort(blocks.begin(), blocks.end(), [](const MatchBlock& x, const MatchBlock& y) {
    return std::tie(x.a_pos, x.b_pos) < std::tie(y.a_pos, y.b_pos);
  });
  return blocks;
}

double sequence_similarity(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  auto matched = [](std::span<const std::string> x, std::span<const std::string> y) {
    std::size_t n = 0;
    for (const auto& m : matching_blocks(x, y)) n += m.size;
    return n;
  };
  const std::size_t best = std::max(matched(a, b), matched(b, a));
  return 2.0 * static_cast<double>(best) / static_cast<double>(total);
}

}  // namespace explor
