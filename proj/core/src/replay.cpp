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

#include <algorithm>

#include "explor/browser_backend.hpp"
#include "explor/engine.hpp"
#include "explor/sim_backend.hpp"

namespace explor {

std::unique_ptr<Environment> make_environment(const RunConfig& config) {
  if (config.backend == BackendKind::kSim)
    return std::make_unique<SimEnvironment>(load_sim_config(config.target));
  BrowserConfig b;
  b.entry_url = config.target;
  b.devtools_endpoint = config.devtools_endpoint;
  b.browser_path = config.browser_path;
  b.network_idle_ms = config.network_idle_ms;
  b.max_wait_ms = config.max_wait_ms;
  b.server_errors_only = config.server_errors_only;
  return std::make_unique<BrowserEnvironment>(std::move(b));
}

RunReport run_exploration(const RunConfig& config) {
  config.validate();
  auto env = make_environment(config);
  Engine engine(*env, config);
  return engine.run();
}

ReplayOutcome replay_failure(const RunReport& report, std::size_t failure_id, Environment& env) {
  const auto rec = std::find_if(report.failures.begin(), report.failures.end(),
                                [&](const FailureRecord& f) { return f.id == failure_id; });
  if (rec == report.failures.end())
    throw std::out_of_range("no failure with id " + std::to_string(failure_id));
  if (rec->test_case >= report.test_cases.size())
    throw std::out_of_range("failure " + std::to_string(failure_id) + " has no test case");
  const TestCase& tc = report.test_cases[rec->test_case];
  const Failure& expected = rec->failure;

  ReplayOutcome out;
  env.restore(tc.env_checkpoint);
  Page page = env.reset();

  auto absorb = [&](const ExecuteResult& r, std::size_t step) {
    for (Failure f : r.failures) {
      f.step = step;
      if (f.kind == expected.kind && step == expected.step) out.reproduced = true;
      out.observed.push_back(std::move(f));
    }
  };

  if (expected.step == 0) {
    const BoundAction noop{ActionDescriptor::noop(), std::nullopt};
    absorb(env.execute(page, std::span(&noop, 1)), 0);
  }
  for (std::size_t i = 0; i < tc.steps.size() && i < expected.step; ++i) {
    const auto r = env.execute(page, std::span(&tc.steps[i].action, 1));
    if (r.diverged_at) {
      out.diverged_at = i + 1;
      break;
    }
    ++out.steps_executed;
    absorb(r, i + 1);
    page = r.page;
  }

  if (out.reproduced)
    out.detail = std::string(to_string(expected.kind)) + " reproduced at step " + std::to_string(expected.step);
  else if (out.diverged_at)
    out.detail = "diverged at step " + std::to_string(*out.diverged_at);
  else
    out.detail = "no " + std::string(to_string(expected.kind)) + " at step " + std::to_string(expected.step);
  return out;
}

ReplayOutcome replay_failure(const RunReport& report, std::size_t failure_id) {
  const RunConfig config = report.config.get<RunConfig>();
  auto env = make_environment(config);
  return replay_failure(report, failure_id, *env);
}

}  // namespace explor
