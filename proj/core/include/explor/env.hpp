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

// Environment contract shared by the simulator and the browser backend,
// plus the action / failure / test-case data model.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "explor/ids.hpp"
#include "json.hpp"

namespace explor {

using Json = nlohmann::json;

struct Page {
  std::string url;
  std::string html_doc;
};

enum class ActionKind { kClick, kFill, kSelect, kNoop };

std::string_view to_string(ActionKind kind);
ActionKind action_kind_from_string(std::string_view s);

// Identifies an element independently of dynamic content: tag plus a few
// stable attributes, disambiguated by the ordinal among elements sharing the
// same signature in document order.
struct Locator {
  std::string tag;
  std::string id;
  std::string name;
  std::string type;
  std::string href_path;
  int ordinal = 0;

  std::string signature() const;
  friend auto operator<=>(const Locator&, const Locator&) = default;
};

struct InputConstraints {
  std::string input_type = "text";
  std::optional<std::string> min;
  std::optional<std::string> max;
  std::optional<int> maxlength;
  std::optional<std::string> pattern;
  std::vector<std::string> options;

  friend bool operator==(const InputConstraints&, const InputConstraints&) = default;
};

struct ActionDescriptor {
  Locator locator;
  ActionKind kind = ActionKind::kNoop;
  std::optional<InputConstraints> input_constraints;

  static ActionDescriptor noop() { return {}; }
  bool is_noop() const { return kind == ActionKind::kNoop; }
  // Key that identifies the action within one abstract state.
  std::string key() const;
};

struct BoundAction {
  ActionDescriptor descriptor;
  std::optional<std::string> input_value;  // set iff kind is fill or select
};

enum class FailureKind { kJsException, kClientError, kServerError };

std::string_view to_string(FailureKind kind);
FailureKind failure_kind_from_string(std::string_view s);
// Classifies an HTTP status; nullopt for statuses below 400.
std::optional<FailureKind> classify_status(int status);

struct Failure {
  FailureKind kind = FailureKind::kJsException;
  std::string message;
  std::optional<int> status;
  std::string url;
  // Index of the provoking action within the executed batch on return from
  // Environment::execute; the engine rewrites it to the 1-based step of the
  // test case.
  std::size_t step = 0;

  // Identity used when collapsing duplicates in reports.
  std::string dedup_key() const;
};

struct TestStep {
  StateId from;
  BoundAction action;
  StateId to;
};

struct TestCase {
  StateId start;
  std::vector<TestStep> steps;
  std::uint64_t seed = 0;
  bool failed = false;
  // Opaque backend snapshot taken at the reset that started this test case;
  // null when the backend cannot checkpoint.
  Json env_checkpoint;
};

// A DOM element as listed by a backend snapshot.
struct ElementInfo {
  std::string tag;
  std::map<std::string, std::string> attributes;
  bool rendered = true;  // has a non-empty layout box
  bool visible = true;   // not display:none / visibility:hidden / [hidden]
  bool disabled = false;
  std::vector<std::string> options;  // <select> option values

  std::optional<std::string> attr(std::string_view key) const;
};

struct ExecuteResult {
  Page page;
  std::vector<Failure> failures;
  // Page after each action that was actually performed.
  std::vector<Page> intermediate;
  // Set when an action's target element could not be found; holds the
  // index of that action. `intermediate` then has exactly that many pages.
  std::optional<std::size_t> diverged_at;
};

class BackendUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Environment {
 public:
  virtual ~Environment() = default;

  // Navigates to the entry page. Server-side state is left untouched.
  virtual Page reset() = 0;

  // Performs `actions` in order starting from `current`.
  virtual ExecuteResult execute(const Page& current, std::span<const BoundAction> actions) = 0;

  // Element listing for the page most recently returned by reset/execute.
  virtual std::vector<ElementInfo> snapshot_elements() = 0;

  // Host that defines the in-scope domain.
  virtual std::string scope_host() const = 0;

  // Time since the environment was created. The simulator advances a
  // virtual clock; the browser backend uses wall-clock time.
  virtual std::chrono::milliseconds elapsed() const = 0;

  // Backend state snapshot usable by restore(); null if unsupported.
  virtual Json checkpoint() const { return nullptr; }
  virtual void restore(const Json& /*snapshot*/) {}
};

// True iff `link` does not belong to `scope_host`'s registrable domain.
// Relative links are resolved against `base_url` first. Anything that cannot
// be parsed, and non-http(s) schemes other than about:, count as external.
bool is_external(std::string_view link, std::string_view scope_host,
                 std::string_view base_url = {});

// JSON mapping for report files.
void to_json(Json& j, const Locator& l);
void from_json(const Json& j, Locator& l);
void to_json(Json& j, const InputConstraints& c);
void from_json(const Json& j, InputConstraints& c);
void to_json(Json& j, const ActionDescriptor& a);
void from_json(const Json& j, ActionDescriptor& a);
void to_json(Json& j, const BoundAction& a);
void from_json(const Json& j, BoundAction& a);
void to_json(Json& j, const Failure& f);
void from_json(const Json& j, Failure& f);
void to_json(Json& j, const TestCase& t);
void from_json(const Json& j, TestCase& t);

}  // namespace explor
