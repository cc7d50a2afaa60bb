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

// Deterministic, configuration-driven web application simulator. See
// docs/sim_config.md for the file format.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "explor/env.hpp"
#include "explor/guard_expr.hpp"

namespace explor {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what), field(std::move(field_path)) {}
  std::string field;
};

struct SimFailure {
  FailureKind kind = FailureKind::kServerError;
  std::optional<int> status;
  std::string message;
  GuardExpr when;  // fires only if this holds before the effects apply
};

struct SimAction {
  std::string id;
  std::string tag = "a";
  std::map<std::string, std::string> attributes;
  std::vector<std::string> options;  // <select> only
  std::string label;
  bool hidden = false;  // rendered but invisible
  GuardExpr guard;      // element present only while this holds
  std::vector<std::pair<std::string, GuardExpr>> effects;  // applied simultaneously
  std::optional<std::string> destination;  // page id; stays on the page if absent
  std::optional<SimFailure> failure;
};

struct SimMutation {
  std::string tag = "tr";
  int per_visit = 1;  // tags appended per prior visit
  int max = 1000;     // cap on appended tags
  bool stamp = false;  // visit counter in the text, tags unchanged
};

struct SimPage {
  std::string id;
  std::string url_template;  // "{flag}" placeholders are substituted
  std::vector<std::string> skeleton;
  std::optional<SimMutation> mutation;
  std::vector<SimAction> actions;
};

struct SimAppConfig {
  std::string name;
  std::string base_url = "http://sim.local";
  std::string entry_page;
  std::int64_t action_latency_ms = 100;  // virtual time charged per action
  FlagMap initial_flags;
  std::map<std::string, SimPage> pages;
};

// Parses and validates eagerly. Errors name the offending field, e.g.
// "pages.home.actions[2].guard".
SimAppConfig parse_sim_config(const Json& json);
SimAppConfig load_sim_config(const std::filesystem::path& path);

class SimEnvironment final : public Environment {
 public:
  explicit SimEnvironment(SimAppConfig config);

  Page reset() override;
  ExecuteResult execute(const Page& current, std::span<const BoundAction> actions) override;
  std::vector<ElementInfo> snapshot_elements() override;
  std::string scope_host() const override;
  std::chrono::milliseconds elapsed() const override { return clock_; }
  Json checkpoint() const override;
  void restore(const Json& snapshot) override;

  // Renders `page_id` for the current flags and visit tallies.
  Page render(const std::string& page_id) const;

  const SimAppConfig& config() const { return config_; }
  const std::string& current_page() const { return current_; }
  const FlagMap& flags() const { return flags_; }
  std::size_t visits(const std::string& page_id) const;

 private:
  struct Rendered {
    std::vector<ElementInfo> elements;
    std::vector<const SimAction*> sources;  // parallel to elements
  };
  Rendered rendered_elements(const SimPage& page) const;
  void arrive(const std::string& page_id);

  SimAppConfig config_;
  std::string current_;
  FlagMap flags_;
  std::map<std::string, std::size_t> visits_;
  std::chrono::milliseconds clock_{0};
};

}  // namespace explor
