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

#include "explor/guard_expr.hpp"

#include <cctype>
#include <vector>

namespace explor {

struct GuardExpr::Node {
  enum class Op { kConst, kFlag, kNot, kNeg, kAnd, kOr, kEq, kNe, kLt, kLe, kGt, kGe, kAdd, kSub };
  Op op = Op::kConst;
  std::int64_t value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = GuardExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_binary(Node::Op op, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::set<std::string>& ids) : s_(text), ids_(ids) {}

  NodePtr run() {
    auto n = parse_or();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExprError("expression \"" + std::string(s_) + "\": " + what + " at offset " +
                    std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  NodePtr parse_or() {
    auto l = parse_and();
    while (accept("||")) l = make_binary(Node::Op::kOr, l, parse_and());
    return l;
  }

  NodePtr parse_and() {
    auto l = parse_cmp();
    while (accept("&&")) l = make_binary(Node::Op::kAnd, l, parse_cmp());
    return l;
  }

  NodePtr parse_cmp() {
    auto l = parse_sum();
    if (accept("==")) return make_binary(Node::Op::kEq, l, parse_sum());
    if (accept("!=")) return make_binary(Node::Op::kNe, l, parse_sum());
    if (accept("<=")) return make_binary(Node::Op::kLe, l, parse_sum());
    if (accept(">=")) return make_binary(Node::Op::kGe, l, parse_sum());
    if (accept("<")) return make_binary(Node::Op::kLt, l, parse_sum());
    if (accept(">")) return make_binary(Node::Op::kGt, l, parse_sum());
    return l;
  }

  NodePtr parse_sum() {
    auto l = parse_unary();
    while (true) {
      if (accept("+")) {
        l = make_binary(Node::Op::kAdd, l, parse_unary());
      } else if (accept("-")) {
        l = make_binary(Node::Op::kSub, l, parse_unary());
      } else {
        return l;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (s_.substr(pos_, 2) != "!=" && accept("!")) {
      auto n = std::make_shared<Node>();
      n->op = Node::Op::kNot;
      n->lhs = parse_unary();
      return n;
    }
    if (accept("-")) {
      auto n = std::make_shared<Node>();
      n->op = Node::Op::kNeg;
      n->lhs = parse_unary();
      return n;
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept("(")) {
      auto n = parse_or();
      if (!accept(")")) fail("expected ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = v * 10 + (s_[pos_++] - '0');
      auto n = std::make_shared<Node>();
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string word(s_.substr(start, pos_ - start));
      auto n = std::make_shared<Node>();
      if (word == "true" || word == "false") {
        n->value = word == "true";
      } else {
        n->op = Node::Op::kFlag;
        ids_.insert(word);
        n->name = std::move(word);
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::set<std::string>& ids_;
};

std::int64_t eval_node(const Node& n, const FlagMap& flags) {
  switch (n.op) {
    case Node::Op::kConst: return n.value;
    case Node::Op::kFlag: {
      auto it = flags.find(n.name);
      if (it == flags.end()) throw ExprError("undeclared flag '" + n.name + "'");
      return it->second;
    }
    case Node::Op::kNot: return eval_node(*n.lhs, flags) == 0;
    case Node::Op::kNeg: return -eval_node(*n.lhs, flags);
    case Node::Op::kAnd: return eval_node(*n.lhs, flags) && eval_node(*n.rhs, flags);
    case Node::Op::kOr: return eval_node(*n.lhs, flags) || eval_node(*n.rhs, flags);
    case Node::Op::kEq: return eval_node(*n.lhs, flags) == eval_node(*n.rhs, flags);
    case Node::Op::kNe: return eval_node(*n.lhs, flags) != eval_node(*n.rhs, flags);
    case Node::Op::kLt: return eval_node(*n.lhs, flags) < eval_node(*n.rhs, flags);
    case Node::Op::kLe: return eval_node(*n.lhs, flags) <= eval_node(*n.rhs, flags);
    case Node::Op::kGt: return eval_node(*n.lhs, flags) > eval_node(*n.rhs, flags);
    case Node::Op::kGe: return eval_node(*n.lhs, flags) >= eval_node(*n.rhs, flags);
    case Node::Op::kAdd: return eval_node(*n.lhs, flags) + eval_node(*n.rhs, flags);
    case Node::Op::kSub: return eval_node(*n.lhs, flags) - eval_node(*n.rhs, flags);
  }
  return 0;
}

}  // namespace

GuardExpr::GuardExpr() : text_("true") {
  auto n = std::make_shared<Node>();
  n->value = 1;
  root_ = n;
}

GuardExpr GuardExpr::parse(std::string_view text) {
  GuardExpr e;
  e.text_ = std::string(text);
  e.root_ = Parser(text, e.identifiers_).run();
  return e;
}

std::int64_t GuardExpr::eval(const FlagMap& flags) const { return eval_node(*root_, flags); }

}  // namespace explor
