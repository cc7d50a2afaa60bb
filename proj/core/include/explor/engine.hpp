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

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "explor/curiosity.hpp"
#include "explor/dfa.hpp"
#include "explor/env.hpp"
#include "explor/policy.hpp"
#include "explor/report.hpp"
#include "explor/rng.hpp"
#include "explor/state_abstraction.hpp"

namespace explor {

enum class BackendKind { kSim, kBrowser };
enum class PolicyKind { kCuriosity, kUniformRandom };

struct RunConfig {
  BackendKind backend = BackendKind::kSim;
  std::string target;  // sim config path or entry URL
  double time_budget_secs = 1800;
  std::size_t max_steps_per_episode = 100;
  // Steps (sim) or seconds (browser) without a new abstract state before
  // DFA guidance kicks in. Unset means 200 steps / 120 s.
  std::optional<double> stuck_threshold;
  double similarity_threshold = kDefaultSimilarityThreshold;
  double lambda = 0.95;
  double tau = 1.0;
  // Q of a newly registered (state, action) pair. Unset means 1/(1-lambda),
  // the largest return reachable with rewards <= 1.
  std::optional<double> initial_q;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;  // empty: nothing written
  bool export_dfa = false;

  PolicyKind policy = PolicyKind::kCuriosity;
  bool dfa_guidance = true;
  std::size_t max_total_steps = 0;  // 0: unlimited
  bool stop_on_first_failure = false;

  // Browser backend.
  std::string devtools_endpoint;  // ws:// or http://host:port; empty launches a browser
  std::string browser_path;
  int network_idle_ms = 500;
  int max_wait_ms = 10000;
  bool server_errors_only = false;

  double effective_stuck_threshold() const;
  double effective_initial_q() const;
  void validate() const;  // throws std::invalid_argument
};

void to_json(Json& j, const RunConfig& c);
void from_json(const Json& j, RunConfig& c);

// Interns action descriptors into ids; id 0 is the empty action.
class ActionCatalog {
 public:
  ActionCatalog();
  ActionId intern(const ActionDescriptor& d);
  const ActionDescriptor& at(ActionId id) const { return actions_.at(id.value); }
  const std::vector<ActionDescriptor>& all() const { return actions_; }

 private:
  std::vector<ActionDescriptor> actions_;
  std::map<std::string, ActionId> ids_;
};

// Curiosity-driven exploration loop over one environment.
class Engine {
 public:
  Engine(Environment& env, RunConfig config);

  // Explores until the time or step budget is exhausted and returns the
  // report. BackendUnavailable propagates after the partial report has been
  // flushed to out_dir.
  RunReport run();

  // --- Pieces of the loop, public for testing. ---

  // One iteration of the loop: budget check, episode start, step, stuck
  // handling, next-action selection. False once the run should stop.
  bool advance();

  // Resets to the homepage and starts a new test case with `pending` queued
  // (the empty action when not given).
  void begin_episode(std::vector<BoundAction> pending = {});

  // Executes the pending buffer and folds every observed transition into the
  // counts, DFA, Q-table (last transition only) and the test case.
  void step();

  // Called when no new state appeared within the stuck threshold: resets and
  // queues the shortest trace to the most curious recorded transition,
  // trying up to three candidates before falling back to a fresh episode.
  // Returns the queued trace (empty on fallback).
  std::vector<ActionId> handle_stuck();

  // Appends (prev, action, next) to the current test case; any failures
  // snapshot the test case into the failed set.
  void record_step(StateId prev, const BoundAction& action, StateId next,
                   std::vector<Failure> failures);

  bool stuck() const;
  bool budget_exhausted() const;

  const StateRegistry& registry() const { return registry_; }
  const VisitCounts& counts() const { return counts_; }
  const QPolicy& policy() const { return policy_; }
  QPolicy& policy() { return policy_; }
  const Dfa& dfa() const { return *dfa_; }
  const ActionCatalog& catalog() const { return catalog_; }
  const TestCase& current_test_case() const { return test_case_; }
  const std::vector<TestCase>& failed_test_cases() const { return failed_cases_; }
  const std::vector<FailureRecord>& failures() const { return failures_; }
  const std::vector<MetricsRow>& metrics() const { return metrics_; }
  std::size_t episode_steps() const { return episode_steps_; }
  std::size_t total_steps() const { return total_steps_; }
  StateId current_state() const { return current_state_; }
  const std::vector<BoundAction>& pending() const { return pending_; }

  RunReport make_report() const;

 private:
  BoundAction bind(ActionId id);
  StateId observe_page(const Page& page, std::vector<ElementInfo> elements);
  void select_next();
  void push_metrics();
  void write_outputs(const RunReport& report) const;
  std::chrono::milliseconds now() const { return env_.elapsed(); }

  Environment& env_;
  RunConfig config_;
  StateRegistry registry_;
  VisitCounts counts_;
  QPolicy policy_;
  std::optional<Dfa> dfa_;
  ActionCatalog catalog_;
  Rng policy_rng_;
  Rng input_rng_;

  Page page_;
  StateId current_state_;
  std::vector<BoundAction> pending_;
  bool episode_over_ = false;
  TestCase test_case_;
  std::size_t episode_steps_ = 0;
  std::size_t total_steps_ = 0;
  std::size_t episodes_ = 0;

  // Stuck detection: position of the last new state (or guidance event).
  std::size_t last_progress_step_ = 0;
  std::chrono::milliseconds last_progress_time_{0};

  std::vector<TestCase> failed_cases_;
  std::vector<FailureRecord> failures_;
  std::map<std::string, std::size_t> failure_keys_;
  std::size_t total_failures_ = 0;
  std::optional<std::size_t> first_failure_step_;
  std::vector<MetricsRow> metrics_;
  std::unique_ptr<MetricsWriter> metrics_writer_;
  std::size_t stuck_events_ = 0;
  std::size_t dfa_replays_ = 0;
  std::size_t dfa_divergences_ = 0;
  bool replaying_ = false;
  std::string stop_reason_;
};

// Builds the environment named by the config (sim config file or browser).
std::unique_ptr<Environment> make_environment(const RunConfig& config);

// Convenience: make_environment + Engine::run.
RunReport run_exploration(const RunConfig& config);

struct ReplayOutcome {
  bool reproduced = false;
  std::size_t steps_executed = 0;
  std::optional<std::size_t> diverged_at;  // 1-based step
  std::vector<Failure> observed;            // with 1-based steps
  std::string detail;
};

// Re-executes the test case attached to failure `failure_id` of `report`
// and checks that a failure of the same kind shows up at the same step.
ReplayOutcome replay_failure(const RunReport& report, std::size_t failure_id, Environment& env);
ReplayOutcome replay_failure(const RunReport& report, std::size_t failure_id);

}  // namespace explor
