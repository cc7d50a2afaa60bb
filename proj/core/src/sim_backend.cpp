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

#include "explor/sim_backend.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "explor/state_abstraction.hpp"
#include "explor/url.hpp"

namespace explor {
namespace {

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

bool is_void(std::string_view tag) {
  return std::find(kVoidElements.begin(), kVoidElements.end(), tag) != kVoidElements.end();
}

std::string escape_attr(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '<': out += "&lt;"; break;
      default: out += c;
    }
  }
  return out;
}

GuardExpr parse_expr(const Json& j, const std::string& path, const FlagMap& flags) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_boolean()) {
    text = j.get<bool>() ? "true" : "false";
  } else if (j.is_number_integer()) {
    text = std::to_string(j.get<std::int64_t>());
  } else {
    throw ConfigError(path, "expected an expression string");
  }
  GuardExpr e;
  try {
    e = GuardExpr::parse(text);
  } catch (const ExprError& err) {
    throw ConfigError(path, err.what());
  }
  for (const auto& id : e.identifiers())
    if (!flags.count(id)) throw ConfigError(path, "references undeclared flag '" + id + "'");
  return e;
}

std::int64_t flag_value(const Json& j, const std::string& path) {
  if (j.is_boolean()) return j.get<bool>() ? 1 : 0;
  if (j.is_number_integer()) return j.get<std::int64_t>();
  throw ConfigError(path, "flag initial value must be boolean or integer");
}

SimAction parse_action(const Json& j, const std::string& path, const FlagMap& flags) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  SimAction a;
  a.id = j.value("id", "");
  a.tag = j.value("tag", "a");
  a.label = j.value("label", a.id);
  a.hidden = j.value("hidden", false);
  if (auto it = j.find("attrs"); it != j.end()) {
    if (!it->is_object()) throw ConfigError(path + ".attrs", "expected an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw ConfigError(path + ".attrs." + k, "expected a string");
      a.attributes[k] = v.get<std::string>();
    }
  }
  if (auto it = j.find("options"); it != j.end()) {
    a.options = it->get<std::vector<std::string>>();
    if (a.tag == "select" && a.options.empty())
      throw ConfigError(path + ".options", "select needs at least one option");
  }
  if (auto it = j.find("guard"); it != j.end()) a.guard = parse_expr(*it, path + ".guard", flags);
  if (auto it = j.find("effects"); it != j.end()) {
    if (!it->is_object()) throw ConfigError(path + ".effects", "expected an object");
    for (const auto& [k, v] : it->items()) {
      const std::string epath = path + ".effects." + k;
      if (!flags.count(k)) throw ConfigError(epath, "assigns undeclared flag '" + k + "'");
      a.effects.emplace_back(k, parse_expr(v, epath, flags));
    }
  }
  if (auto it = j.find("to"); it != j.end() && !it->is_null()) a.destination = it->get<std::string>();
  if (auto it = j.find("failure"); it != j.end() && !it->is_null()) {
    const std::string fpath = path + ".failure";
    SimFailure f;
    try {
      f.kind = failure_kind_from_string(it->value("kind", "server_error"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fpath + ".kind", e.what());
    }
    f.message = it->value("message", "");
    if (it->contains("status")) f.status = it->at("status").get<int>();
    if (f.kind == FailureKind::kJsException && f.status)
      throw ConfigError(fpath + ".status", "js_exception carries no status");
    if (f.kind != FailureKind::kJsException) {
      if (!f.status) throw ConfigError(fpath + ".status", "HTTP failures need a status");
      if (classify_status(*f.status) != f.kind)
        throw ConfigError(fpath + ".status", "status does not match failure kind");
    }
    if (it->contains("when")) f.when = parse_expr(it->at("when"), fpath + ".when", flags);
    a.failure = std::move(f);
  }
  return a;
}

std::string substitute(const std::string& tmpl, const FlagMap& flags) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      if (close != std::string::npos) {
        auto it = flags.find(std::string_view(tmpl).substr(i + 1, close - i - 1));
        if (it != flags.end()) {
          out += std::to_string(it->second);
          i = close;
          continue;
        }
      }
    }
    out += tmpl[i];
  }
  return out;
}

}  // namespace

SimAppConfig parse_sim_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("$", "expected an object");
  SimAppConfig cfg;
  cfg.name = j.value("name", "");
  cfg.base_url = j.value("base_url", cfg.base_url);
  if (!parse_url(cfg.base_url) || parse_url(cfg.base_url)->host.empty())
    throw ConfigError("base_url", "not an absolute URL");
  cfg.action_latency_ms = j.value("action_latency_ms", cfg.action_latency_ms);
  if (cfg.action_latency_ms <= 0) throw ConfigError("action_latency_ms", "must be positive");

  if (auto it = j.find("flags"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("flags", "expected an object");
    for (const auto& [k, v] : it->items()) cfg.initial_flags[k] = flag_value(v, "flags." + k);
  }

  const auto pages = j.find("pages");
  if (pages == j.end() || !pages->is_object() || pages->empty())
    throw ConfigError("pages", "at least one page is required");
  for (const auto& [pid, pj] : pages->items()) {
    const std::string path = "pages." + pid;
    if (!pj.is_object()) throw ConfigError(path, "expected an object");
    SimPage page;
    page.id = pid;
    page.url_template = pj.value("url", "/" + pid);
    if (page.url_template.empty() || page.url_template.front() != '/')
      throw ConfigError(path + ".url", "must start with '/'");
    page.skeleton = pj.value("skeleton", std::vector<std::string>{});
    if (auto mt = pj.find("mutation"); mt != pj.end() && !mt->is_null()) {
      SimMutation m;
      m.tag = mt->value("tag", m.tag);
      m.per_visit = mt->value("per_visit", m.per_visit);
      m.max = mt->value("max", m.max);
      m.stamp = mt->value("stamp", false);
      if (m.per_visit < 0 || m.max < 0) throw ConfigError(path + ".mutation", "must be non-negative");
      page.mutation = m;
    }
    if (auto at = pj.find("actions"); at != pj.end()) {
      if (!at->is_array()) throw ConfigError(path + ".actions", "expected an array");
      for (std::size_t i = 0; i < at->size(); ++i)
        page.actions.push_back(parse_action((*at)[i], path + ".actions[" + std::to_string(i) + "]",
                                            cfg.initial_flags));
    }
    cfg.pages.emplace(pid, std::move(page));
  }

  cfg.entry_page = j.value("entry_page", "");
  if (!cfg.pages.count(cfg.entry_page)) throw ConfigError("entry_page", "unknown page '" + cfg.entry_page + "'");
  for (const auto& [pid, page] : cfg.pages) {
    for (std::size_t i = 0; i < page.actions.size(); ++i) {
      const auto& dest = page.actions[i].destination;
      if (dest && !cfg.pages.count(*dest))
        throw ConfigError("pages." + pid + ".actions[" + std::to_string(i) + "].to",
                          "unknown page '" + *dest + "'");
    }
  }
  return cfg;
}

SimAppConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_sim_config(j);
}

SimEnvironment::SimEnvironment(SimAppConfig config)
    : config_(std::move(config)), current_(config_.entry_page), flags_(config_.initial_flags) {}

std::size_t SimEnvironment::visits(const std::string& page_id) const {
  auto it = visits_.find(page_id);
  return it == visits_.end() ? 0 : it->second;
}

void SimEnvironment::arrive(const std::string& page_id) {
  current_ = page_id;
  ++visits_[page_id];
}

std::string SimEnvironment::scope_host() const {
  auto u = parse_url(config_.base_url);
  return u ? u->host : std::string{};
}

SimEnvironment::Rendered SimEnvironment::rendered_elements(const SimPage& page) const {
  Rendered r;
  for (const auto& a : page.actions) {
    if (!a.guard.holds(flags_)) continue;
    ElementInfo e;
    e.tag = a.tag;
    e.attributes = a.attributes;
    e.options = a.options;
    e.visible = !a.hidden;
    r.elements.push_back(std::move(e));
    r.sources.push_back(&a);
  }
  return r;
}

Page SimEnvironment::render(const std::string& page_id) const {
  const SimPage& page = config_.pages.at(page_id);
  Page out;
  out.url = config_.base_url;
  while (!out.url.empty() && out.url.back() == '/') out.url.pop_back();
  out.url += substitute(page.url_template, flags_);

  std::string& html = out.html_doc;
  html = "<!DOCTYPE html>\n";
  for (const auto& tag : page.skeleton) {
    html += "<" + tag + ">";
    if (!is_void(tag)) html += "</" + tag + ">";
  }
  if (page.mutation) {
    const auto prior = visits(page_id) > 0 ? visits(page_id) - 1 : 0;
    const auto rows = std::min<std::size_t>(static_cast<std::size_t>(page.mutation->max),
                                            prior * static_cast<std::size_t>(page.mutation->per_visit));
    if (page.mutation->stamp) html += "<span class=\"stamp\">visit " + std::to_string(visits(page_id)) + "</span>";
    for (std::size_t i = 0; i < rows; ++i)
      html += "<" + page.mutation->tag + " data-row=\"" + std::to_string(i) + "\"></" +
              page.mutation->tag + ">";
  }
  const auto rendered = rendered_elements(page);
  for (const SimAction* a : rendered.sources) {
    html += "\n<" + a->tag;
    for (const auto& [k, v] : a->attributes) html += " " + k + "=\"" + escape_attr(v) + "\"";
    if (a->hidden) html += " style=\"display:none\"";
    html += ">";
    if (is_void(a->tag)) continue;
    for (const auto& opt : a->options)
      html += "<option value=\"" + escape_attr(opt) + "\">" + escape_attr(opt) + "</option>";
    if (a->options.empty()) html += escape_attr(a->label);
    html += "</" + a->tag + ">";
  }
  html += "\n";
  return out;
}

std::vector<ElementInfo> SimEnvironment::snapshot_elements() {
  return rendered_elements(config_.pages.at(current_)).elements;
}

Page SimEnvironment::reset() {
  arrive(config_.entry_page);
  return render(current_);
}

ExecuteResult SimEnvironment::execute(const Page& current, std::span<const BoundAction> actions) {
  ExecuteResult result;
  result.page = current;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto& action = actions[i];
    if (action.descriptor.is_noop()) {
      result.page = render(current_);
      result.intermediate.push_back(result.page);
      continue;
    }
    const Page before = render(current_);
    const auto rendered = rendered_elements(config_.pages.at(current_));
    const auto locators = assign_locators(before, rendered.elements);
    const SimAction* target = nullptr;
    for (std::size_t k = 0; k < locators.size(); ++k) {
      if (locators[k] == action.descriptor.locator && rendered.elements[k].visible) {
        target = rendered.sources[k];
        break;
      }
    }
    if (!target) {
      result.diverged_at = i;
      result.page = before;
      return result;
    }

    clock_ += std::chrono::milliseconds(config_.action_latency_ms);
    if (target->failure && target->failure->when.holds(flags_)) {
      Failure f;
      f.kind = target->failure->kind;
      f.status = target->failure->status;
      f.message = target->failure->message;
      f.url = before.url;
      f.step = i;
      result.failures.push_back(std::move(f));
    }
    std::vector<std::pair<std::string, std::int64_t>> updates;
    for (const auto& [flag, expr] : target->effects) updates.emplace_back(flag, expr.eval(flags_));
    for (auto& [flag, value] : updates) flags_[flag] = value;
    if (target->destination) arrive(*target->destination);

    result.page = render(current_);
    result.intermediate.push_back(result.page);
  }
  return result;
}

Json SimEnvironment::checkpoint() const {
  Json visits = Json::object();
  for (const auto& [k, v] : visits_) visits[k] = v;
  Json flags = Json::object();
  for (const auto& [k, v] : flags_) flags[k] = v;
  return Json{{"page", current_}, {"flags", std::move(flags)}, {"visits", std::move(visits)}};
}

void SimEnvironment::restore(const Json& snapshot) {
  if (snapshot.is_null()) return;
  current_ = snapshot.at("page").get<std::string>();
  flags_ = config_.initial_flags;
  for (const auto& [k, v] : snapshot.at("flags").items()) flags_[k] = v.get<std::int64_t>();
  visits_.clear();
  for (const auto& [k, v] : snapshot.at("visits").items()) visits_[k] = v.get<std::size_t>();
}

}  // namespace explor
