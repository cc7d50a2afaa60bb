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

#include "explor/state_abstraction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "explor/similarity.hpp"
#include "explor/url.hpp"

namespace explor {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string href_path(const Page& page, std::string_view href) {
  if (href.empty()) return {};
  auto base = parse_url(page.url);
  std::optional<Url> target = base ? resolve_url(*base, href) : parse_url(href);
  if (!target) return std::string(href);
  if (target->scheme != "http" && target->scheme != "https") return target->scheme + ":";
  return target->path;
}

bool has_click_handler(const ElementInfo& e) {
  if (e.attributes.count("onclick")) return true;
  const auto role = e.attr("role");
  return role && (*role == "button" || *role == "link" || *role == "menuitem" ||
                  *role == "tab" || *role == "checkbox");
}

InputConstraints constraints_for(const ElementInfo& e, std::string input_type) {
  InputConstraints c;
  c.input_type = std::move(input_type);
  c.min = e.attr("min");
  c.max = e.attr("max");
  if (auto ml = e.attr("maxlength")) {
    try {
      c.maxlength = std::stoi(*ml);
    } catch (const std::exception&) {
    }
  }
  if (auto p = e.attr("pattern"); p && !p->empty()) c.pattern = *p;
  c.options = e.options;
  return c;
}

// Action kind for an element, or nullopt if it is not operable.
std::optional<ActionDescriptor> classify(const ElementInfo& e, const Locator& loc) {
  ActionDescriptor a;
  a.locator = loc;
  const std::string& tag = e.tag;
  if (tag == "a") {
    if (!e.attr("href") && !has_click_handler(e)) return std::nullopt;
    a.kind = ActionKind::kClick;
  } else if (tag == "button") {
    a.kind = ActionKind::kClick;
  } else if (tag == "input") {
    const std::string type = lower(e.attr("type").value_or("text"));
    if (type == "hidden" || type == "file") return std::nullopt;
    if (type == "submit" || type == "button" || type == "reset" || type == "image" ||
        type == "checkbox" || type == "radio") {
      a.kind = ActionKind::kClick;
    } else {
      a.kind = ActionKind::kFill;
      a.input_constraints = constraints_for(e, type);
    }
  } else if (tag == "textarea") {
    a.kind = ActionKind::kFill;
    a.input_constraints = constraints_for(e, "textarea");
  } else if (tag == "select") {
    if (e.options.empty()) return std::nullopt;
    a.kind = ActionKind::kSelect;
    a.input_constraints = constraints_for(e, "select");
  } else if (has_click_handler(e)) {
    a.kind = ActionKind::kClick;
  } else {
    return std::nullopt;
  }
  return a;
}

}  // namespace

std::string state_url_key(std::string_view url) {
  if (auto n = normalize_url(url)) return *n;
  return std::string(url);
}

std::vector<Locator> assign_locators(const Page& page, const std::vector<ElementInfo>& elements) {
  std::vector<Locator> out;
  out.reserve(elements.size());
  std::map<std::string, int> seen;
  for (const auto& e : elements) {
    Locator loc;
    loc.tag = lower(e.tag);
    loc.id = e.attr("id").value_or("");
    loc.name = e.attr("name").value_or("");
    if (loc.tag == "input" || loc.tag == "button")
      loc.type = lower(e.attr("type").value_or(loc.tag == "input" ? "text" : "submit"));
    if (loc.tag == "a") loc.href_path = href_path(page, e.attr("href").value_or(""));
    loc.ordinal = seen[loc.signature()]++;
    out.push_back(std::move(loc));
  }
  return out;
}

std::vector<ActionDescriptor> retrieve_valid_actions(const Page& page,
                                                     const std::vector<ElementInfo>& elements,
                                                     std::string_view scope_host) {
  const auto locators = assign_locators(page, elements);
  std::vector<ActionDescriptor> actions;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (!e.rendered || !e.visible || e.disabled) continue;
    auto action = classify(e, locators[i]);
    if (!action) continue;
    if (e.tag == "a") {
      if (auto href = e.attr("href"); href && !href->empty()) {
        const bool script_link = lower(href->substr(0, 11)) == "javascript:";
        if (!script_link && is_external(*href, scope_host, page.url)) continue;
      }
    }
    actions.push_back(std::move(*action));
  }
  return actions;
}

StateRegistry::StateRegistry(double similarity_threshold) : threshold_(similarity_threshold) {
  if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0))
    throw std::invalid_argument("similarity threshold must lie in (0, 1]");
}

StateRegistry::Match StateRegistry::assign(const Page& page, std::size_t step) {
  return assign(state_url_key(page.url), extract_tag_sequence(page.html_doc), step);
}

StateRegistry::Match StateRegistry::assign(std::string_view normalized_url,
                                           const TagSequence& tags, std::size_t step) {
  for (auto& s : states_) {
    if (s.canonical_url != normalized_url) continue;
    if (sequence_similarity(tags, s.representative_tags) > threshold_) {
      ++s.visit_count;
      return {s.id, false};
    }
  }
  AbstractState s;
  s.id = StateId{static_cast<std::uint32_t>(states_.size())};
  s.canonical_url = std::string(normalized_url);
  s.representative_tags = tags;
  s.visit_count = 1;
  s.first_seen_step = step;
  states_.push_back(std::move(s));
  return {states_.back().id, true};
}

Abstraction abstract_page(const Page& page, const std::vector<ElementInfo>& elements,
                          StateRegistry& registry, std::string_view scope_host,
                          std::size_t step) {
  Abstraction out;
  out.actions = retrieve_valid_actions(page, elements, scope_host);
  const auto match = registry.assign(page, step);
  out.state = match.id;
  out.created = match.created;
  return out;
}

}  // namespace explor
