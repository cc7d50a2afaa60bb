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

#include <gtest/gtest.h>

#include "explor/url.hpp"

namespace explor {
namespace {

TEST(ParseUrl, Components) {
  const auto u = parse_url("HTTP://Shop.Example.com:8080/a/b?x=1#top");
  ASSERT_TRUE(u);
  EXPECT_EQ(u->scheme, "http");
  EXPECT_EQ(u->host, "shop.example.com");
  EXPECT_EQ(u->port, "8080");
  EXPECT_EQ(u->path, "/a/b");
  EXPECT_EQ(u->query, "x=1");
  EXPECT_EQ(u->fragment, "top");
}

TEST(ParseUrl, OpaqueAndMissingScheme) {
  const auto blank = parse_url("about:blank");
  ASSERT_TRUE(blank);
  EXPECT_EQ(blank->scheme, "about");
  EXPECT_TRUE(blank->host.empty());
  EXPECT_FALSE(parse_url("/relative/path"));
  EXPECT_FALSE(parse_url(""));
}

TEST(ResolveUrl, BrowserRules) {
  const auto base = *parse_url("http://h.com/a/b/c?q=1#f");
  auto r = [&](std::string_view ref) { return resolve_url(base, ref)->to_string(); };
  EXPECT_EQ(r("https://o.com/x"), "https://o.com/x");
  EXPECT_EQ(r("//cdn.h.com/x"), "http://cdn.h.com/x");
  EXPECT_EQ(r("/root"), "http://h.com/root");
  EXPECT_EQ(r("?z=2"), "http://h.com/a/b/c?z=2");
  EXPECT_EQ(r("#g"), "http://h.com/a/b/c?q=1#g");
  EXPECT_EQ(r("d"), "http://h.com/a/b/d");
  EXPECT_EQ(r("../d"), "http://h.com/a/d");
  EXPECT_EQ(r("./../../../d"), "http://h.com/d");
}

TEST(NormalizeUrl, DropsFragmentAndTrailingSlash) {
  EXPECT_EQ(normalize_url("http://h.com/a/#x"), "http://h.com/a");
  EXPECT_EQ(normalize_url("http://h.com/"), "http://h.com/");
  EXPECT_EQ(normalize_url("http://h.com"), "http://h.com/");
  EXPECT_EQ(normalize_url("http://h.com/a?b=1#c"), "http://h.com/a?b=1");
  EXPECT_NE(normalize_url("http://h.com/a?b=1"), normalize_url("http://h.com/a?b=2"));
}

TEST(RegistrableDomain, Suffixes) {
  EXPECT_EQ(registrable_domain("www.example.com"), "example.com");
  EXPECT_EQ(registrable_domain("www.shop.example.co.uk"), "example.co.uk");
  EXPECT_EQ(registrable_domain("localhost"), "localhost");
  EXPECT_EQ(registrable_domain("127.0.0.1"), "127.0.0.1");
}

}  // namespace
}  // namespace explor
