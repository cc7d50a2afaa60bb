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

#include "explor/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace explor {
namespace {

constexpr std::array<std::string_view, 9> kRawTextElements = {
    "script", "style", "textarea", "title", "xmp",
    "iframe", "noembed", "noframes", "plaintext"};

bool is_name_char(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '_' || c == ':' || c == '.';
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// Case-insensitive search for "</name" starting at `from`.
std::size_t find_end_tag(std::string_view doc, std::string_view name, std::size_t from) {
  for (std::size_t i = from; i + 2 + name.size() <= doc.size(); ++i) {
    if (doc[i] != '<' || doc[i + 1] != '/') continue;
    bool match = true;
    for (std::size_t k = 0; k < name.size(); ++k) {
      if (lower(doc[i + 2 + k]) != name[k]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    const std::size_t after = i + 2 + name.size();
    if (after == doc.size() || !is_name_char(static_cast<unsigned char>(doc[after])))
      return i;
  }
  return std::string_view::npos;
}

// Skips attributes of a start tag beginning at `pos`; returns the index just
// past the closing '>' (or doc.size() on EOF).
std::size_t skip_attributes(std::string_view doc, std::size_t pos) {
  char quote = 0;
  for (; pos < doc.size(); ++pos) {
    const char c = doc[pos];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      // Quotes only open an attribute value after '='.
      std::size_t back = pos;
      while (back > 0 && std::isspace(static_cast<unsigned char>(doc[back - 1]))) --back;
      if (back > 0 && doc[back - 1] == '=') quote = c;
    } else if (c == '>') {
      return pos + 1;
    }
  }
  return doc.size();
}

}  // namespace

TagSequence extract_tag_sequence(std::string_view doc) {
  TagSequence tags;
  std::size_t pos = 0;
  while (pos < doc.size()) {
    const auto lt = doc.find('<', pos);
    if (lt == std::string_view::npos || lt + 1 >= doc.size()) break;
    const char next = doc[lt + 1];

    if (doc.compare(lt, 4, "<!--") == 0) {
      const auto end = doc.find("-->", lt + 4);
      pos = end == std::string_view::npos ? doc.size() : end + 3;
      continue;
    }
    if (next == '!' || next == '?' || next == '/') {
      const auto end = doc.find('>', lt + 2);
      pos = end == std::string_view::npos ? doc.size() : end + 1;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(next))) {
      pos = lt + 1;
      continue;
    }

    std::size_t name_end = lt + 1;
    while (name_end < doc.size() && is_name_char(static_cast<unsigned char>(doc[name_end])))
      ++name_end;
    std::string name(doc.substr(lt + 1, name_end - lt - 1));
    std::transform(name.begin(), name.end(), name.begin(), lower);
    pos = skip_attributes(doc, name_end);

    const bool raw = std::find(kRawTextElements.begin(), kRawTextElements.end(), name) !=
                     kRawTextElements.end();
    tags.push_back(std::move(name));
    if (raw) {
      if (tags.back() == "plaintext") break;
      const auto end = find_end_tag(doc, tags.back(), pos);
      pos = end == std::string_view::npos ? doc.size() : end;
    }
  }
  return tags;
}

}  // namespace explor
