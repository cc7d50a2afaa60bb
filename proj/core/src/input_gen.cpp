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

#include "explor/input_gen.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <regex>
#include <vector>

#include "explor/url.hpp"

namespace explor {
namespace {

constexpr std::string_view kLower = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kAlnum =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr int kMaxRetries = 32;
constexpr int kUnboundedRepeatCap = 8;

std::string random_from(std::string_view alphabet, std::size_t len, Rng& rng) {
  std::string out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out += alphabet[rng.below(alphabet.size())];
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

// ---- Calendar helpers (proleptic Gregorian, days since 1970-01-01). ----

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2));
}

std::optional<std::int64_t> parse_date(std::string_view s) {
  int y = 0;
  unsigned m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  std::from_chars(s.data(), s.data() + 4, y);
  std::from_chars(s.data() + 5, s.data() + 7, m);
  std::from_chars(s.data() + 8, s.data() + 10, d);
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  const auto days = days_from_civil(y, m, d);
  int ry;
  unsigned rm, rd;
  civil_from_days(days, ry, rm, rd);
  if (ry != y || rm != m || rd != d) return std::nullopt;  // e.g. 02-30
  return days;
}

std::string format_date(std::int64_t days) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
  return buf;
}

// Minutes since midnight for "HH:MM" or "HH:MM:SS" (seconds ignored).
std::optional<int> parse_time(std::string_view s) {
  if (s.size() != 5 && s.size() != 8) return std::nullopt;
  if (s[2] != ':' || (s.size() == 8 && s[5] != ':')) return std::nullopt;
  int h = 0, mi = 0, sec = 0;
  auto num = [&](std::size_t pos, int& out, int limit) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos])) ||
        !std::isdigit(static_cast<unsigned char>(s[pos + 1])))
      return false;
    out = (s[pos] - '0') * 10 + (s[pos + 1] - '0');
    return out < limit;
  };
  if (!num(0, h, 24) || !num(3, mi, 60)) return std::nullopt;
  if (s.size() == 8 && !num(6, sec, 60)) return std::nullopt;
  return h * 60 + mi;
}

std::string format_time(int minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

// ---- Pattern subset: parse into a small tree, then sample. ----

struct PatternNode {
  enum class Kind { kChars, kSeq, kAlt, kRepeat } kind = Kind::kSeq;
  std::string chars;  // candidate characters for kChars
  std::vector<PatternNode> children;
  int min = 1;
  int max = 1;
};

std::string printable_except(std::string_view excluded) {
  std::string out;
  for (char c = 0x20; c < 0x7f; ++c)
    if (excluded.find(c) == std::string_view::npos) out += c;
  return out;
}

std::string class_escape(char c) {
  switch (c) {
    case 'd': return "0123456789";
    case 'w': return std::string(kAlnum) + "_";
    case 's': return " ";
    case 'D': return printable_except("0123456789");
    case 'W': return printable_except(std::string(kAlnum) + "_");
    case 'S': return printable_except(" ");
    default: return std::string(1, c);
  }
}

class PatternParser {
 public:
  explicit PatternParser(std::string_view p) : p_(p) {}

  std::optional<PatternNode> parse() {
    if (!p_.empty() && p_.front() == '^') ++pos_;
    auto node = alternation();
    if (!node) return std::nullopt;
    if (pos_ < p_.size() && p_[pos_] == '$' && pos_ + 1 == p_.size()) ++pos_;
    if (pos_ != p_.size()) return std::nullopt;
    return node;
  }

 private:
  std::optional<PatternNode> alternation() {
    PatternNode alt;
    alt.kind = PatternNode::Kind::kAlt;
    while (true) {
      auto seq = sequence();
      if (!seq) return std::nullopt;
      alt.children.push_back(std::move(*seq));
      if (pos_ < p_.size() && p_[pos_] == '|') {
        ++pos_;
        continue;
      }
      break;
    }
    if (alt.children.size() == 1) return std::move(alt.children.front());
    return alt;
  }

  std::optional<PatternNode> sequence() {
    PatternNode seq;
    seq.kind = PatternNode::Kind::kSeq;
    while (pos_ < p_.size() && p_[pos_] != '|' && p_[pos_] != ')') {
      if (p_[pos_] == '$' && pos_ + 1 == p_.size()) break;
      auto a = atom();
      if (!a) return std::nullopt;
      auto q = quantified(std::move(*a));
      if (!q) return std::nullopt;
      seq.children.push_back(std::move(*q));
    }
    return seq;
  }

  std::optional<PatternNode> atom() {
    const char c = p_[pos_++];
    switch (c) {
      case '(': {
        if (p_.substr(pos_, 2) == "?:") {
          pos_ += 2;
        } else if (pos_ < p_.size() && p_[pos_] == '?') {
          return std::nullopt;  // lookarounds
        }
        auto inner = alternation();
        if (!inner || pos_ >= p_.size() || p_[pos_] != ')') return std::nullopt;
        ++pos_;
        return inner;
      }
      case '[': return char_class();
      case '.': return chars(printable_except(""));
      case '\\': {
        if (pos_ >= p_.size()) return std::nullopt;
        const char e = p_[pos_++];
        if (std::isdigit(static_cast<unsigned char>(e)) || e == 'b' || e == 'B')
          return std::nullopt;
        return chars(class_escape(e));
      }
      case '*': case '+': case '?': case '{': case '^': case '$':
        return std::nullopt;
      default:
        return chars(std::string(1, c));
    }
  }

  std::optional<PatternNode> char_class() {
    bool negate = false;
    if (pos_ < p_.size() && p_[pos_] == '^') {
      negate = true;
      ++pos_;
    }
    std::string set;
    bool first = true;
    while (pos_ < p_.size() && (p_[pos_] != ']' || first)) {
      first = false;
      char lo = p_[pos_++];
      if (lo == '\\') {
        if (pos_ >= p_.size()) return std::nullopt;
        const std::string esc = class_escape(p_[pos_++]);
        if (esc.size() > 1) {
          set += esc;
          continue;
        }
        lo = esc[0];
      }
      if (pos_ + 1 < p_.size() && p_[pos_] == '-' && p_[pos_ + 1] != ']') {
        ++pos_;
        char hi = p_[pos_++];
        if (hi == '\\') {
          if (pos_ >= p_.size()) return std::nullopt;
          hi = p_[pos_++];
        }
        if (hi < lo) return std::nullopt;
        for (int ch = lo; ch <= hi; ++ch) set += static_cast<char>(ch);
      } else {
        set += lo;
      }
    }
    if (pos_ >= p_.size()) return std::nullopt;
    ++pos_;  // ']'
    if (negate) set = printable_except(set);
    if (set.empty()) return std::nullopt;
    return chars(std::move(set));
  }

  std::optional<PatternNode> quantified(PatternNode node) {
    while (pos_ < p_.size()) {
      int lo, hi;
      const char c = p_[pos_];
      if (c == '*') {
        lo = 0, hi = kUnboundedRepeatCap, ++pos_;
      } else if (c == '+') {
        lo = 1, hi = kUnboundedRepeatCap, ++pos_;
      } else if (c == '?') {
        lo = 0, hi = 1, ++pos_;
      } else if (c == '{') {
        const auto close = p_.find('}', pos_);
        if (close == std::string_view::npos) return std::nullopt;
        const auto body = p_.substr(pos_ + 1, close - pos_ - 1);
        const auto comma = body.find(',');
        auto to_int = [](std::string_view s, int& out) {
          auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
          return ec == std::errc{} && ptr == s.data() + s.size();
        };
        if (comma == std::string_view::npos) {
          if (!to_int(body, lo)) return std::nullopt;
          hi = lo;
        } else {
          if (!to_int(body.substr(0, comma), lo)) return std::nullopt;
          const auto rest = body.substr(comma + 1);
          if (rest.empty()) {
            hi = lo + kUnboundedRepeatCap;
          } else if (!to_int(rest, hi)) {
            return std::nullopt;
          }
        }
        if (hi < lo) return std::nullopt;
        pos_ = close + 1;
      } else {
        break;
      }
      if (pos_ < p_.size() && p_[pos_] == '?') ++pos_;  // lazy marker
      PatternNode rep;
    rep.kind = PatternNode::Kind::kRepeat;
      rep.min = lo;
      rep.max = hi;
      rep.children.push_back(std::move(node));
      node = std::move(rep);
    }
    return node;
  }

  static PatternNode chars(std::string set) {
    PatternNode n;
    n.kind = PatternNode::Kind::kChars;
    n.chars = std::move(set);
    return n;
  }

  std::string_view p_;
  std::size_t pos_ = 0;
};

void sample(const PatternNode& n, Rng& rng, std::string& out) {
  switch (n.kind) {
    case PatternNode::Kind::kChars:
      out += n.chars[rng.below(n.chars.size())];
      break;
    case PatternNode::Kind::kSeq:
      for (const auto& c : n.children) sample(c, rng, out);
      break;
    case PatternNode::Kind::kAlt:
      sample(n.children[rng.below(n.children.size())], rng, out);
      break;
    case PatternNode::Kind::kRepeat: {
      const auto count = rng.between(n.min, n.max);
      for (std::int64_t i = 0; i < count; ++i) sample(n.children.front(), rng, out);
      break;
    }
  }
}

bool matches_pattern(std::string_view pattern, std::string_view value) {
  try {
    const std::regex re(std::string(pattern), std::regex::ECMAScript);
    return std::regex_match(value.begin(), value.end(), re);
  } catch (const std::regex_error&) {
    return true;  // browsers ignore invalid patterns
  }
}

std::size_t text_length(const InputConstraints& c, Rng& rng, std::size_t lo, std::size_t hi) {
  if (c.maxlength) hi = std::min<std::size_t>(hi, static_cast<std::size_t>(std::max(0, *c.maxlength)));
  lo = std::min(lo, hi);
  return static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(lo),
                                              static_cast<std::int64_t>(hi)));
}

std::string generate_email(const InputConstraints& c, Rng& rng) {
  static constexpr std::array<std::string_view, 3> kTlds = {"com", "org", "net"};
  const std::size_t cap = c.maxlength ? static_cast<std::size_t>(std::max(0, *c.maxlength)) : 64;
  if (cap < 3) return random_from(kLower, std::min<std::size_t>(cap, 1), rng);
  std::string local = random_from(kLower, static_cast<std::size_t>(rng.between(1, 8)), rng);
  std::string domain = random_from(kLower, static_cast<std::size_t>(rng.between(1, 8)), rng);
  std::string out = local + "@" + domain + "." + std::string(kTlds[rng.below(kTlds.size())]);
  if (out.size() > cap) out = local.substr(0, 1) + "@" + domain.substr(0, 1);
  return out;
}

std::string generate_number(const InputConstraints& c, Rng& rng) {
  auto lo = c.min ? parse_number(*c.min) : std::nullopt;
  auto hi = c.max ? parse_number(*c.max) : std::nullopt;
  if (!lo && !hi) lo = 0, hi = 100;
  if (!lo) lo = *hi - 100;
  if (!hi) hi = *lo + 100;
  const auto ilo = static_cast<std::int64_t>(std::ceil(*lo));
  const auto ihi = static_cast<std::int64_t>(std::floor(*hi));
  if (ilo > ihi) {
    // No integer in range; the lower bound itself is valid.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *lo);
    return buf;
  }
  return std::to_string(rng.between(ilo, ihi));
}

std::string generate_date(const InputConstraints& c, Rng& rng) {
  std::int64_t lo = days_from_civil(2000, 1, 1);
  std::int64_t hi = days_from_civil(2030, 12, 31);
  if (c.min) {
    if (auto d = parse_date(*c.min)) lo = *d;
  }
  if (c.max) {
    if (auto d = parse_date(*c.max)) hi = *d;
  }
  if (c.min && !c.max) hi = std::max(hi, lo + 3650);
  if (c.max && !c.min) lo = std::min(lo, hi - 3650);
  return format_date(rng.between(lo, std::max(lo, hi)));
}

std::string generate_time(const InputConstraints& c, Rng& rng) {
  int lo = 0, hi = 24 * 60 - 1;
  if (c.min) {
    if (auto t = parse_time(*c.min)) lo = *t;
  }
  if (c.max) {
    if (auto t = parse_time(*c.max)) hi = *t;
  }
  return format_time(static_cast<int>(rng.between(lo, std::max(lo, hi))));
}

std::string generate_for_type(const InputConstraints& c, Rng& rng) {
  const std::string& type = c.input_type;
  if (type == "text" || type == "search" || type == "textarea")
    return random_from(kAlnum, text_length(c, rng, 1, 10), rng);
  if (type == "password") return random_from(kAlnum, text_length(c, rng, 8, 12), rng);
  if (type == "tel") return random_from("0123456789", text_length(c, rng, 7, 10), rng);
  if (type == "email") return generate_email(c, rng);
  if (type == "number" || type == "range") return generate_number(c, rng);
  if (type == "date") return generate_date(c, rng);
  if (type == "time") return generate_time(c, rng);
  if (type == "url") {
    std::string out = "https://" + random_from(kLower, static_cast<std::size_t>(rng.between(1, 8)), rng) +
                      ".example.com/" + random_from(kLower, static_cast<std::size_t>(rng.between(0, 6)), rng);
    if (c.maxlength && out.size() > static_cast<std::size_t>(*c.maxlength)) out = "http://a.b/";
    return out;
  }
  if (type == "checkbox" || type == "radio") return rng.below(2) ? "on" : "off";
  if (type == "select") {
    if (c.options.empty()) return "";
    return c.options[rng.below(c.options.size())];
  }
  if (type == "color") {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%06llx",
                  static_cast<unsigned long long>(rng.below(0x1000000)));
    return buf;
  }
  // Unsupported type: bounded printable ASCII.
  return random_from(printable_except("<>&\"'"), text_length(c, rng, 1, 8), rng);
}

}  // namespace

bool is_supported_input_type(std::string_view t) {
  static constexpr std::array<std::string_view, 15> kTypes = {
      "text", "search", "textarea", "password", "tel", "email", "number", "range",
      "date", "time", "url", "checkbox", "radio", "select", "color"};
  return std::find(kTypes.begin(), kTypes.end(), t) != kTypes.end();
}

std::optional<std::string> generate_from_pattern(std::string_view pattern, Rng& rng) {
  auto tree = PatternParser(pattern).parse();
  if (!tree) return std::nullopt;
  std::string out;
  sample(*tree, rng, out);
  return out;
}

std::string generate_input(const InputConstraints& c, Rng& rng) {
  const bool pattern_applies = c.pattern && !c.pattern->empty() && c.input_type != "select" &&
                               c.input_type != "checkbox" && c.input_type != "radio";
  std::string value;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    if (pattern_applies) {
      if (auto v = generate_from_pattern(*c.pattern, rng)) {
        value = std::move(*v);
        if (c.maxlength && value.size() > static_cast<std::size_t>(*c.maxlength)) continue;
        if (satisfies_constraints(c, value)) return value;
        continue;
      }
    }
    value = generate_for_type(c, rng);
    if (satisfies_constraints(c, value)) return value;
  }
  return value;
}

bool satisfies_constraints(const InputConstraints& c, std::string_view v) {
  const std::string& type = c.input_type;
  const bool length_limited = type == "text" || type == "search" || type == "textarea" ||
                              type == "password" || type == "tel" || type == "email" ||
                              type == "url";
  if (length_limited && c.maxlength && v.size() > static_cast<std::size_t>(*c.maxlength))
    return false;
  if (c.pattern && !c.pattern->empty() && type != "select" && type != "checkbox" &&
      type != "radio" && !matches_pattern(*c.pattern, v))
    return false;

  if (type == "email") {
    const auto at = v.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 >= v.size()) return false;
    if (v.find('@', at + 1) != std::string_view::npos) return false;
    const auto domain = v.substr(at + 1);
    if (domain.front() == '.' || domain.back() == '.' ||
        domain.find("..") != std::string_view::npos)
      return false;
    return std::all_of(domain.begin(), domain.end(), [](unsigned char ch) {
      return std::isalnum(ch) || ch == '-' || ch == '.';
    });
  }
  if (type == "number" || type == "range") {
    auto n = parse_number(v);
    if (!n) return false;
    if (c.min) {
      if (auto lo = parse_number(*c.min); lo && *n < *lo) return false;
    }
    if (c.max) {
      if (auto hi = parse_number(*c.max); hi && *n > *hi) return false;
    }
    return true;
  }
  if (type == "date") {
    auto d = parse_date(v);
    if (!d) return false;
    if (c.min) {
      if (auto lo = parse_date(*c.min); lo && *d < *lo) return false;
    }
    if (c.max) {
      if (auto hi = parse_date(*c.max); hi && *d > *hi) return false;
    }
    return true;
  }
  if (type == "time") {
    auto t = parse_time(v);
    if (!t) return false;
    if (c.min) {
      if (auto lo = parse_time(*c.min); lo && *t < *lo) return false;
    }
    if (c.max) {
      if (auto hi = parse_time(*c.max); hi && *t > *hi) return false;
    }
    return true;
  }
  if (type == "url") {
    auto u = parse_url(v);
    return u && !u->host.empty();
  }
  if (type == "tel") {
    return std::all_of(v.begin(), v.end(), [](unsigned char ch) {
      return std::isdigit(ch) || ch == '+' || ch == '-' || ch == ' ';
    });
  }
  if (type == "checkbox" || type == "radio") return v == "on" || v == "off";
  if (type == "select") {
    if (c.options.empty()) return v.empty();
    return std::find(c.options.begin(), c.options.end(), v) != c.options.end();
  }
  if (type == "color") {
    return v.size() == 7 && v[0] == '#' &&
           std::all_of(v.begin() + 1, v.end(),
                       [](unsigned char ch) { return std::isxdigit(ch); });
  }
  return v.find('\n') == std::string_view::npos;
}

}  // namespace explor
