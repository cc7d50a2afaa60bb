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

#include <regex>

#include "explor/input_gen.hpp"

namespace explor {
namespace {

InputConstraints of(std::string type) {
  InputConstraints c;
  c.input_type = std::move(type);
  return c;
}

// Checks written against std::regex, independent of the library validator.
bool full_match(const std::string& pattern, const std::string& v) {
  return std::regex_match(v, std::regex(pattern, std::regex::ECMAScript));
}

bool oracle_valid(const InputConstraints& c, const std::string& v) {
  const std::string& t = c.input_type;
  if (c.maxlength && v.size() > std::size_t(*c.maxlength) && t != "number" && t != "date" &&
      t != "time" && t != "select")
    return false;
  if (c.pattern && !full_match(*c.pattern, v)) return false;
  if (t == "email") return full_match(R"([^@\s]+@[A-Za-z0-9-]+(\.[A-Za-z0-9-]+)*)", v);
  if (t == "number") {
    if (!full_match(R"(-?\d+(\.\d+)?)", v)) return false;
    const double x = std::stod(v);
    return (!c.min || x >= std::stod(*c.min)) && (!c.max || x <= std::stod(*c.max));
  }
  if (t == "date") {
    if (!full_match(R"(\d{4}-(0[1-9]|1[0-2])-(0[1-9]|[12]\d|3[01]))", v)) return false;
    return (!c.min || v >= *c.min) && (!c.max || v <= *c.max);
  }
  if (t == "time") {
    if (!full_match(R"(([01]\d|2[0-3]):[0-5]\d)", v)) return false;
    return (!c.min || v >= *c.min) && (!c.max || v <= *c.max);
  }
  if (t == "url") return full_match(R"(https?://[^/\s]+/\S*)", v);
  if (t == "select") return std::find(c.options.begin(), c.options.end(), v) != c.options.end();
  if (t == "checkbox" || t == "radio") return v == "on" || v == "off";
  if (t == "tel") return full_match(R"([0-9+\- ]*)", v);
  return v.find('\n') == std::string::npos;
}

TEST(GenerateInput, NumberInRange) {
  auto c = of("number");
  c.min = "1";
  c.max = "5";
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto v = generate_input(c, rng);
    ASSERT_TRUE(full_match(R"(-?\d+)", v)) << v;
    const int n = std::stoi(v);
    ASSERT_GE(n, 1);
    ASSERT_LE(n, 5);
  }
}

TEST(GenerateInput, EmailShape) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto v = generate_input(of("email"), rng);
    const auto at = v.find('@');
    ASSERT_NE(at, std::string::npos) << v;
    ASSERT_GT(at, 0u);
    ASSERT_LT(at + 1, v.size());
    ASSERT_TRUE(oracle_valid(of("email"), v)) << v;
  }
}

TEST(GenerateInput, SelectFromOptionsReproducibly) {
  auto c = of("select");
  c.options = {"A", "B", "C"};
  Rng r1(3), r2(3);
  std::set<std::string> seen;
  for (int i = 0; i < 100; ++i) {
    const auto v = generate_input(c, r1);
    ASSERT_EQ(v, generate_input(c, r2));
    seen.insert(v);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"A", "B", "C"}));
}

TEST(GenerateInput, UnsupportedTypeFallsBack) {
  EXPECT_FALSE(is_supported_input_type("week"));
  Rng rng(4);
  const auto v = generate_input(of("week"), rng);
  EXPECT_FALSE(v.empty());
  EXPECT_LE(v.size(), 8u);
  for (char ch : v) EXPECT_TRUE(ch >= 0x20 && ch < 0x7f);
}

TEST(GenerateFromPattern, SupportedSubset) {
  Rng rng(5);
  for (const std::string p : {R"([A-Z]{2}\d{3})", R"((ab|cd)+x?)", R"(\w{1,4}-\s?\d*)", R"([^a-y]{3})", R"(a.c)"}) {
    for (int i = 0; i < 50; ++i) {
      const auto v = generate_from_pattern(p, rng);
      ASSERT_TRUE(v) << p;
      ASSERT_TRUE(full_match(p, *v)) << p << " -> " << *v;
    }
  }
  EXPECT_FALSE(generate_from_pattern("(?=x)y", rng));
}

TEST(GenerateInputProperty, NeverViolatesConstraints) {
  const std::vector<std::string> types = {"text", "password", "email", "number", "date", "time",
                                          "url", "tel", "checkbox", "radio", "select", "search"};
  const std::vector<std::string> patterns = {R"([a-z]{3,6})", R"(\d{4})", R"([A-Z][a-z]+)", R"(x(yz)*)"};
  Rng gen(6);
  for (int trial = 0; trial < 3000; ++trial) {
    auto c = of(types[gen.below(types.size())]);
    if (c.input_type == "number") {
      const auto lo = gen.between(-50, 50);
      c.min = std::to_string(lo);
      if (gen.below(2)) c.max = std::to_string(lo + gen.between(0, 100));
    } else if (c.input_type == "date") {
      c.min = "2020-02-" + std::string(gen.below(2) ? "10" : "28");
      if (gen.below(2)) c.max = "2021-01-15";
    } else if (c.input_type == "time") {
      if (gen.below(2)) c.min = "08:30";
      if (gen.below(2)) c.max = "17:05";
    } else if (c.input_type == "select") {
      for (auto n = 1 + gen.below(4); n > 0; --n) c.options.push_back("opt" + std::to_string(gen.below(9)));
    } else if (c.input_type == "text" || c.input_type == "search" || c.input_type == "password") {
      if (gen.below(2)) c.maxlength = int(1 + gen.below(12));
      if (gen.below(2)) c.pattern = patterns[gen.below(patterns.size())];
      if (c.pattern && c.maxlength) c.maxlength = 12;
    } else if (c.input_type == "email" && gen.below(2)) {
      c.maxlength = 40;
    }
    Rng rng(1000 + trial);
    const auto v = generate_input(c, rng);
    ASSERT_TRUE(oracle_valid(c, v)) << c.input_type << " -> '" << v << "'";
    ASSERT_TRUE(satisfies_constraints(c, v));
    Rng again(1000 + trial);
    ASSERT_EQ(generate_input(c, again), v);
  }
}

TEST(SatisfiesConstraints, RejectsObviousViolations) {
  auto n = of("number");
  n.max = "3";
  EXPECT_FALSE(satisfies_constraints(n, "4"));
  EXPECT_FALSE(satisfies_constraints(of("email"), "no-at-sign"));
  EXPECT_FALSE(satisfies_constraints(of("date"), "2021-02-30"));
  auto t = of("text");
  t.maxlength = 2;
  EXPECT_FALSE(satisfies_constraints(t, "abc"));
}

}  // namespace
}  // namespace explor
