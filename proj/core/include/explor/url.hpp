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

#include <optional>
#include <string>
#include <string_view>

namespace explor {

// Parsed absolute URL. Components are stored as they appear, except that
// scheme and host are lowercased.
struct Url {
  std::string scheme;
  std::string host;
  std::string port;  // empty when absent
  std::string path;  // always begins with '/' for hierarchical URLs
  std::string query;     // without leading '?'
  std::string fragment;  // without leading '#'

  std::string to_string() const;
};

// Parses an absolute URL such as "http://host:8080/a/b?x=1#top".
// Opaque schemes ("about:blank", "data:...") parse with an empty host and
// the remainder as the path. Returns nullopt if no scheme is present.
std::optional<Url> parse_url(std::string_view text);

// Resolves `ref` against `base` following the usual browser rules for
// absolute, scheme-relative, root-relative, query-only, fragment-only and
// path-relative references. Dot segments are removed.
std::optional<Url> resolve_url(const Url& base, std::string_view ref);

// Canonical form used for state equality: scheme://host[:port]path[?query]
// with the fragment dropped and a trailing slash stripped from non-root paths.
std::string normalize_url(const Url& url);
std::optional<std::string> normalize_url(std::string_view text);

// Registrable part of a host ("www.shop.example.co.uk" -> "example.co.uk").
// IP literals and single-label hosts are returned unchanged.
std::string registrable_domain(std::string_view host);

}  // namespace explor
