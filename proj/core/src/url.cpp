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

#include "explor/url.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

namespace explor {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
  });
}

bool valid_host(std::string_view h) {
  if (h.empty()) return false;
  return std::none_of(h.begin(), h.end(), [](unsigned char c) {
    return std::isspace(c) || c == '/' || c == '\\' || c == '<' || c == '>' || c == '"';
  });
}

// Splits "path?query#fragment" into its three parts.
void split_path_query_fragment(std::string_view rest, std::string& path,
                               std::string& query, std::string& fragment,
                               bool& has_query) {
  const auto hash = rest.find('#');
  if (hash != std::string_view::npos) {
    fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  const auto q = rest.find('?');
  has_query = q != std::string_view::npos;
  if (has_query) {
    query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  path = std::string(rest);
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  const bool absolute = !path.empty() && path[0] == '/';
  if (absolute) pos = 1;
  bool trailing_slash = false;
  while (pos <= path.size()) {
    auto next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    auto seg = path.substr(pos, next - pos);
    const bool last = next == path.size();
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
      trailing_slash = last;
    } else if (seg == ".") {
      trailing_slash = last;
    } else {
      if (!(last && seg.empty())) out.push_back(seg);
      trailing_slash = last && seg.empty();
    }
    pos = next + 1;
  }
  std::string result = absolute ? "/" : "";
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) result += '/';
    result += out[i];
  }
  if (trailing_slash && !result.empty() && result.back() != '/') result += '/';
  return result;
}

}  // namespace

std::string Url::to_string() const {
  std::string out = scheme + ":";
  if (!host.empty()) {
    out += "//" + host;
    if (!port.empty()) out += ":" + port;
  }
  out += path;
  if (!query.empty()) out += "?" + query;
  if (!fragment.empty()) out += "#" + fragment;
  return out;
}

std::optional<Url> parse_url(std::string_view text) {
  // Trim surrounding whitespace, as browsers do for href values.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);

  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const auto scheme = text.substr(0, colon);
  if (!valid_scheme(scheme)) return std::nullopt;

  Url url;
  url.scheme = to_lower(scheme);
  auto rest = text.substr(colon + 1);
  bool has_query = false;

  if (rest.substr(0, 2) != "//") {
    // Opaque URL (about:blank, mailto:, javascript:, data:).
    split_path_query_fragment(rest, url.path, url.query, url.fragment, has_query);
    return url;
  }

  rest.remove_prefix(2);
  const auto auth_end = rest.find_first_of("/?#");
  auto authority = rest.substr(0, auth_end);
  rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

  if (const auto at = authority.rfind('@'); at != std::string_view::npos)
    authority = authority.substr(at + 1);

  std::string_view host = authority;
  std::string_view port;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    host = authority.substr(0, close + 1);
    if (close + 1 < authority.size()) {
      if (authority[close + 1] != ':') return std::nullopt;
      port = authority.substr(close + 2);
    }
  } else if (const auto pc = authority.rfind(':'); pc != std::string_view::npos) {
    host = authority.substr(0, pc);
    port = authority.substr(pc + 1);
  }
  if (!valid_host(host)) return std::nullopt;
  if (!std::all_of(port.begin(), port.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    return std::nullopt;

  url.host = to_lower(host);
  url.port = std::string(port);
  if ((url.scheme == "http" && url.port == "80") ||
      (url.scheme == "https" && url.port == "443"))
    url.port.clear();

  split_path_query_fragment(rest, url.path, url.query, url.fragment, has_query);
  if (url.path.empty()) url.path = "/";
  url.path = remove_dot_segments(url.path);
  return url;
}

std::optional<Url> resolve_url(const Url& base, std::string_view ref) {
  while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.front())))
    ref.remove_prefix(1);
  while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.back())))
    ref.remove_suffix(1);

  if (const auto colon = ref.find(':'); colon != std::string_view::npos) {
    const auto slash = ref.find_first_of("/?#");
    if (slash == std::string_view::npos || colon < slash) {
      if (valid_scheme(ref.substr(0, colon))) return parse_url(ref);
    }
  }
  if (ref.substr(0, 2) == "//") return parse_url(base.scheme + ":" + std::string(ref));

  Url out = base;
  out.fragment.clear();
  if (ref.empty()) return out;

  std::string path, query, fragment;
  bool has_query = false;
  split_path_query_fragment(ref, path, query, fragment, has_query);
  out.fragment = fragment;

  if (path.empty()) {
    if (has_query) out.query = query;
    return out;
  }
  out.query = query;
  if (path.front() == '/') {
    out.path = remove_dot_segments(path);
  } else {
    std::string merged = base.path;
    const auto last = merged.rfind('/');
    merged = last == std::string::npos ? "/" : merged.substr(0, last + 1);
    out.path = remove_dot_segments(merged + path);
  }
  if (out.path.empty()) out.path = "/";
  return out;
}

std::string normalize_url(const Url& url) {
  Url n = url;
  n.fragment.clear();
  while (n.path.size() > 1 && n.path.back() == '/') n.path.pop_back();
  return n.to_string();
}

std::optional<std::string> normalize_url(std::string_view text) {
  auto url = parse_url(text);
  if (!url) return std::nullopt;
  return normalize_url(*url);
}

std::string registrable_domain(std::string_view host_in) {
  std::string host = to_lower(host_in);
  while (!host.empty() && host.back() == '.') host.pop_back();
  if (host.empty() || host.front() == '[') return host;
  if (std::all_of(host.begin(), host.end(), [](unsigned char c) {
        return std::isdigit(c) || c == '.';
      }))
    return host;

  std::vector<std::string_view> labels;
  std::string_view rest = host;
  while (true) {
    const auto dot = rest.find('.');
    labels.push_back(rest.substr(0, dot));
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
  }
  if (labels.size() <= 2) return host;

  // Small built-in list of two-label public suffixes. Not a full PSL.
  static constexpr std::array<std::string_view, 12> kSecondLevel = {
      "co.uk", "org.uk", "ac.uk", "gov.uk", "com.au", "net.au",
      "org.au", "co.jp",  "ne.jp", "com.br", "com.cn", "co.nz"};
  const auto n = labels.size();
  std::string last_two = std::string(labels[n - 2]) + "." + std::string(labels[n - 1]);
  std::size_t keep = 2;
  if (std::find(kSecondLevel.begin(), kSecondLevel.end(), last_two) != kSecondLevel.end())
    keep = 3;
  if (labels.size() <= keep) return host;
  std::string out;
  for (std::size_t i = n - keep; i < n; ++i) {
    if (!out.empty()) out += '.';
    out += labels[i];
  }
  return out;
}

}  // namespace explor
