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

#include <fstream>
#include <sstream>

#include "explor/html.hpp"
#include "explor/rng.hpp"

namespace explor {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ExtractTagSequence, EmptyDocument) { EXPECT_TRUE(extract_tag_sequence("").empty()); }

TEST(ExtractTagSequence, NestedLiteral) {
  EXPECT_EQ(extract_tag_sequence("<html><body><div><p></p></div></body></html>"),
            (TagSequence{"html", "body", "div", "p"}));
}

TEST(ExtractTagSequence, FormFixtureMatchesHandEnumeration) {
  // Listing written by reading tests/data/form.html top to bottom.
  const TagSequence expected = {"html", "head",  "meta",  "title", "link",  "script", "body",
                                "nav",  "a",     "a",     "h2",    "form",  "div",    "label",
                                "input", "div",  "label", "input", "button", "img",   "br",
                                "table", "tr",   "td"};
  EXPECT_EQ(extract_tag_sequence(read_file(EXPLOR_TEST_DATA_DIR "/form.html")), expected);
}

TEST(ExtractTagSequence, LowercasesAndKeepsDuplicates) {
  EXPECT_EQ(extract_tag_sequence("<DIV><Div></div><SPAN/></DIV>"),
            (TagSequence{"div", "div", "span"}));
}

TEST(ExtractTagSequence, RawTextIsNotScanned) {
  EXPECT_EQ(extract_tag_sequence("<style>a<b{}</style><textarea><p>x</textarea><i>"),
            (TagSequence{"style", "textarea", "i"}));
}

TEST(ExtractTagSequence, QuotedGreaterThanInAttribute) {
  EXPECT_EQ(extract_tag_sequence(R"(<a title="x > y" href='<b>'>t</a><em>)"),
            (TagSequence{"a", "em"}));
}

TEST(ExtractTagSequence, MalformedInputNeverThrows) {
  EXPECT_EQ(extract_tag_sequence("<div <p"), (TagSequence{"div"}));
  EXPECT_EQ(extract_tag_sequence("< div>1 < 2<"), TagSequence{});
  EXPECT_EQ(extract_tag_sequence("<!-- unterminated <div>"), TagSequence{});
  EXPECT_EQ(extract_tag_sequence("<script>never closed <div>"), (TagSequence{"script"}));
}

TEST(ExtractTagSequence, DoesNotInventImpliedElements) {
  EXPECT_EQ(extract_tag_sequence("<table><tr><td></td></tr></table>"),
            (TagSequence{"table", "tr", "td"}));
}

// A document of n generated elements yields exactly n tags.
TEST(ExtractTagSequenceProperty, CountEqualsElementCount) {
  const char* names[] = {"div", "span", "a", "p", "ul", "li", "input", "br", "section", "img"};
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.below(60));
    std::string doc;
    std::vector<std::string> open;
    TagSequence expected;
    for (int i = 0; i < n; ++i) {
      while (!open.empty() && rng.below(3) == 0) {
        doc += "</" + open.back() + ">";
        open.pop_back();
      }
      const std::string name = names[rng.below(10)];
      expected.push_back(name);
      doc += "<" + name;
      if (rng.below(2)) doc += " class=\"c" + std::to_string(i) + "\" data-x='>'";
      doc += ">";
      if (rng.below(2)) doc += "text " + std::to_string(i);
      if (name != "input" && name != "br" && name != "img") open.push_back(name);
    }
    while (!open.empty()) {
      doc += "</" + open.back() + ">";
      open.pop_back();
    }
    ASSERT_EQ(extract_tag_sequence(doc), expected) << doc;
  }
}

}  // namespace
}  // namespace explor
