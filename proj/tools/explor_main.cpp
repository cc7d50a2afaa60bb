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

// Command-line front end: run, baseline-random, replay.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "explor/engine.hpp"
#include "explor/sim_backend.hpp"

namespace {

using explor::BackendKind;
using explor::PolicyKind;
using explor::RunConfig;

constexpr int kExitFailure = 1;
constexpr int kExitBackend = 3;

void add_run_options(CLI::App& cmd, RunConfig& c, std::string& backend, double& stuck) {
  cmd.add_option("--backend", backend, "sim or browser")
      ->check(CLI::IsMember({"sim", "browser"}))
      ->default_val("sim");
  cmd.add_option("--target", c.target, "sim app file or entry URL")->required();
  cmd.add_option("--time-budget-secs", c.time_budget_secs, "exploration budget")
      ->default_val(c.time_budget_secs)
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--max-steps", c.max_steps_per_episode, "steps per episode")
      ->default_val(c.max_steps_per_episode)
      ->check(CLI::PositiveNumber);
  cmd.add_option("--stuck-threshold", stuck, "steps (sim) or seconds (browser) without a new state")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--similarity-threshold", c.similarity_threshold)
      ->default_val(c.similarity_threshold)
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--lambda", c.lambda)->default_val(c.lambda)->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--tau", c.tau)->default_val(c.tau)->check(CLI::PositiveNumber);
  cmd.add_option("--initial-q", c.initial_q, "Q of untried actions (default 1/(1-lambda))");
  cmd.add_option("--seed", c.seed)->default_val(c.seed);
  cmd.add_option("--out-dir", c.out_dir, "where report.json and metrics.csv go");
  cmd.add_flag("--export-dfa", c.export_dfa, "also write dfa.dot");
  cmd.add_flag("!--no-dfa", c.dfa_guidance, "never replay DFA traces when stuck");
  cmd.add_option("--max-total-steps", c.max_total_steps, "stop after this many steps (0: no limit)");
  cmd.add_flag("--stop-on-first-failure", c.stop_on_first_failure);
  cmd.add_option("--devtools-endpoint", c.devtools_endpoint, "attach to a running browser");
  cmd.add_option("--browser-path", c.browser_path, "Chromium executable to launch");
  cmd.add_option("--network-idle-ms", c.network_idle_ms)->default_val(c.network_idle_ms);
  cmd.add_option("--max-wait-ms", c.max_wait_ms)->default_val(c.max_wait_ms);
  cmd.add_flag("--server-errors-only", c.server_errors_only, "ignore 4xx responses");
}

int do_run(RunConfig c, const std::string& backend, double stuck) {
  c.backend = backend == "browser" ? BackendKind::kBrowser : BackendKind::kSim;
  if (stuck > 0) c.stuck_threshold = stuck;
  if (c.backend == BackendKind::kSim) c.target = std::filesystem::absolute(c.target).lexically_normal().string();
  try {
    const auto report = explor::run_exploration(c);
    std::cout << "steps=" << report.total_steps << " episodes=" << report.episodes
              << " states=" << report.states.size() << " transitions=" << report.dfa_transitions
              << " unique_failures=" << report.failures.size() << " stuck=" << report.stuck_events << "\n";
    for (const auto& f : report.failures)
      std::cout << "  [" << f.id << "] " << explor::to_string(f.failure.kind) << " step "
                << f.failure.step << " " << f.failure.url << ": " << f.failure.message << "\n";
    return 0;
  } catch (const explor::BackendUnavailable& e) {
    std::cerr << "backend unavailable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const explor::ConfigError& e) {
    std::cerr << "bad app config: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int do_replay(const std::filesystem::path& dir, std::optional<std::size_t> id) {
  try {
    const auto report = explor::read_report(dir);
    std::vector<std::size_t> ids;
    if (id) {
      ids.push_back(*id);
    } else {
      for (const auto& f : report.failures) ids.push_back(f.id);
    }
    bool all = true;
    for (auto k : ids) {
      const auto outcome = explor::replay_failure(report, k);
      std::cout << "failure " << k << ": " << (outcome.reproduced ? "reproduced" : "NOT reproduced") << " ("
                << outcome.detail << ")\n";
      all = all && outcome.reproduced;
    }
    return all ? 0 : kExitFailure;
  } catch (const explor::BackendUnavailable& e) {
    std::cerr << "backend unavailable: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curiosity-driven web exploration"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  std::string run_backend;
  double run_stuck = 0;
  auto* run = app.add_subcommand("run", "explore with the curiosity policy");
  add_run_options(*run, run_cfg, run_backend, run_stuck);

  RunConfig base_cfg;
  std::string base_backend;
  double base_stuck = 0;
  auto* baseline = app.add_subcommand("baseline-random", "explore with uniform random actions");
  add_run_options(*baseline, base_cfg, base_backend, base_stuck);

  std::filesystem::path report_dir;
  std::size_t failure_id = 0;
  auto* replay = app.add_subcommand("replay", "re-execute the test case of a stored failure");
  replay->add_option("--report", report_dir, "run output directory or report.json")->required();
  auto* id_opt = replay->add_option("--failure-id", failure_id, "failure id (default: all)");

  CLI11_PARSE(app, argc, argv);

  if (*run) return do_run(run_cfg, run_backend, run_stuck);
  if (*baseline) {
    base_cfg.policy = PolicyKind::kUniformRandom;
    return do_run(base_cfg, base_backend, base_stuck);
  }
  return do_replay(report_dir, id_opt->count() ? std::optional(failure_id) : std::nullopt);
}
