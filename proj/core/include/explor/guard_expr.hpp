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

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace explor {

using FlagMap = std::map<std::string, std::int64_t, std::less<>>;

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer/boolean expression over named flags, used by simulator guards and
// effects. Grammar (C precedence):
//   expr   := or
//   or     := and ('||' and)*
//   and    := cmp ('&&' cmp)*
//   cmp    := sum (('=='|'!='|'<'|'<='|'>'|'>=') sum)?
//   sum    := unary (('+'|'-') unary)*
//   unary  := ('!'|'-') unary | atom
//   atom   := integer | 'true' | 'false' | identifier | '(' expr ')'
// Booleans are 0/1.
class GuardExpr {
 public:
  GuardExpr();  // constant true
  static GuardExpr parse(std::string_view text);

  std::int64_t eval(const FlagMap& flags) const;
  bool holds(const FlagMap& flags) const { return eval(flags) != 0; }

  const std::set<std::string>& identifiers() const { return identifiers_; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::set<std::string> identifiers_;
  std::string text_;
};

}  // namespace explor
