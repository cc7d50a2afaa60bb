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

#include "explor/env.hpp"

#include "explor/url.hpp"

namespace explor {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kClick: return "click";
    case ActionKind::kFill: return "fill";
    case ActionKind::kSelect: return "select";
    case ActionKind::kNoop: return "noop";
  }
  return "noop";
}

ActionKind action_kind_from_string(std::string_view s) {
  if (s == "click") return ActionKind::kClick;
  if (s == "fill") return ActionKind::kFill;
  if (s == "select") return ActionKind::kSelect;
  if (s == "noop") return ActionKind::kNoop;
  throw std::invalid_argument("unknown action kind: " + std::string(s));
}

std::string Locator::signature() const {
  std::string out = tag;
  if (!id.empty()) out += "#" + id;
  if (!name.empty()) out += "[name=" + name + "]";
  if (!type.empty()) out += "[type=" + type + "]";
  if (!href_path.empty()) out += "[href=" + href_path + "]";
  out += "@" + std::to_string(ordinal);
  return out;
}

std::string ActionDescriptor::key() const {
  if (is_noop()) return "noop";
  return std::string(to_string(kind)) + ":" + locator.signature();
}

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kJsException: return "js_exception";
    case FailureKind::kClientError: return "client_error";
    case FailureKind::kServerError: return "server_error";
  }
  return "js_exception";
}

FailureKind failure_kind_from_string(std::string_view s) {
  if (s == "js_exception") return FailureKind::kJsException;
  if (s == "client_error") return FailureKind::kClientError;
  if (s == "server_error") return FailureKind::kServerError;
  throw std::invalid_argument("unknown failure kind: " + std::string(s));
}

std::optional<FailureKind> classify_status(int status) {
  if (status >= 500) return FailureKind::kServerError;
  if (status >= 400) return FailureKind::kClientError;
  return std::nullopt;
}

std::string Failure::dedup_key() const {
  constexpr std::size_t kPrefix = 200;
  return std::string(to_string(kind)) + '\x1f' + message.substr(0, kPrefix) + '\x1f' + url;
}

std::optional<std::string> ElementInfo::attr(std::string_view key) const {
  if (auto it = attributes.find(std::string(key)); it != attributes.end()) return it->second;
  return std::nullopt;
}

bool is_external(std::string_view link, std::string_view scope_host, std::string_view base_url) {
  std::optional<Url> base;
  if (!base_url.empty()) base = parse_url(base_url);
  if (!base) base = parse_url("http://" + std::string(scope_host) + "/");
  if (!base) return true;

  auto target = resolve_url(*base, link);
  if (!target) return true;
  if (target->scheme == "about") return false;
  if (target->scheme != "http" && target->scheme != "https") return true;

  std::string scope(scope_host);
  if (auto parsed = parse_url("http://" + scope + "/")) scope = parsed->host;
  return registrable_domain(target->host) != registrable_domain(scope);
}

void to_json(Json& j, const Locator& l) {
  j = Json{{"tag", l.tag}, {"ordinal", l.ordinal}};
  if (!l.id.empty()) j["id"] = l.id;
  if (!l.name.empty()) j["name"] = l.name;
  if (!l.type.empty()) j["type"] = l.type;
  if (!l.href_path.empty()) j["href_path"] = l.href_path;
}

void from_json(const Json& j, Locator& l) {
  l.tag = j.value("tag", "");
  l.id = j.value("id", "");
  l.name = j.value("name", "");
  l.type = j.value("type", "");
  l.href_path = j.value("href_path", "");
  l.ordinal = j.value("ordinal", 0);
}

void to_json(Json& j, const InputConstraints& c) {
  j = Json{{"input_type", c.input_type}};
  if (c.min) j["min"] = *c.min;
  if (c.max) j["max"] = *c.max;
  if (c.maxlength) j["maxlength"] = *c.maxlength;
  if (c.pattern) j["pattern"] = *c.pattern;
  if (!c.options.empty()) j["options"] = c.options;
}

namespace {
std::optional<std::string> scalar_as_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}
}  // namespace

void from_json(const Json& j, InputConstraints& c) {
  c.input_type = j.value("input_type", j.value("type", "text"));
  c.min = scalar_as_string(j, "min");
  c.max = scalar_as_string(j, "max");
  if (j.contains("maxlength")) c.maxlength = j.at("maxlength").get<int>();
  if (j.contains("pattern")) c.pattern = j.at("pattern").get<std::string>();
  c.options = j.value("options", std::vector<std::string>{});
}

void to_json(Json& j, const ActionDescriptor& a) {
  j = Json{{"kind", to_string(a.kind)}};
  if (!a.is_noop()) j["locator"] = a.locator;
  if (a.input_constraints) j["input"] = *a.input_constraints;
}

void from_json(const Json& j, ActionDescriptor& a) {
  a.kind = action_kind_from_string(j.at("kind").get<std::string>());
  a.locator = j.contains("locator") ? j.at("locator").get<Locator>() : Locator{};
  if (j.contains("input")) a.input_constraints = j.at("input").get<InputConstraints>();
}

void to_json(Json& j, const BoundAction& a) {
  j = a.descriptor;
  if (a.input_value) j["value"] = *a.input_value;
}

void from_json(const Json& j, BoundAction& a) {
  a.descriptor = j.get<ActionDescriptor>();
  if (j.contains("value")) a.input_value = j.at("value").get<std::string>();
}

void to_json(Json& j, const Failure& f) {
  j = Json{{"kind", to_string(f.kind)}, {"message", f.message}, {"url", f.url}, {"step", f.step}};
  j["status"] = f.status ? Json(*f.status) : Json(nullptr);
}

void from_json(const Json& j, Failure& f) {
  f.kind = failure_kind_from_string(j.at("kind").get<std::string>());
  f.message = j.value("message", "");
  f.url = j.value("url", "");
  f.step = j.value("step", std::size_t{0});
  if (j.contains("status") && !j.at("status").is_null()) f.status = j.at("status").get<int>();
}

void to_json(Json& j, const TestCase& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"from", s.from.value}, {"action", s.action}, {"to", s.to.value}});
  j = Json{{"start", t.start.value}, {"steps", std::move(steps)}, {"seed", t.seed},
           {"failed", t.failed}, {"env_checkpoint", t.env_checkpoint}};
}

void from_json(const Json& j, TestCase& t) {
  t.start = StateId{j.at("start").get<std::uint32_t>()};
  t.seed = j.value("seed", std::uint64_t{0});
  t.failed = j.value("failed", false);
  t.env_checkpoint = j.value("env_checkpoint", Json(nullptr));
  t.steps.clear();
  for (const auto& s : j.at("steps")) {
    t.steps.push_back({StateId{s.at("from").get<std::uint32_t>()},
                       s.at("action").get<BoundAction>(),
                       StateId{s.at("to").get<std::uint32_t>()}});
  }
}

}  // namespace explor
