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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "explor/env.hpp"

namespace explor {

struct MetricsRow {
  std::size_t step = 0;
  std::int64_t elapsed_ms = 0;
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t unique_failures = 0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct FailureRecord {
  std::size_t id = 0;
  Failure failure;
  std::size_t test_case = 0;  // index into RunReport::test_cases
};

struct StateRecord {
  std::uint32_t id = 0;
  std::string canonical_url;
  std::size_t first_seen_step = 0;
  std::size_t visit_count = 0;
};

struct TransitionRecord {
  std::uint32_t prev = 0;
  std::uint32_t action = 0;
  std::uint32_t next = 0;
  std::uint64_t count = 0;  // current N, i.e. observations + 1
};

struct QRecord {
  std::uint32_t state = 0;
  std::uint32_t action = 0;
  double q = 0.0;
};

struct RunReport {
  Json config;
  std::vector<StateRecord> states;
  std::vector<ActionDescriptor> actions;  // indexed by action id
  std::vector<TransitionRecord> transitions;
  std::vector<QRecord> q_table;
  std::vector<FailureRecord> failures;  // unique failures
  std::vector<TestCase> test_cases;     // failed test cases
  std::vector<MetricsRow> metrics;
  std::size_t total_failures = 0;  // before de-duplication
  std::size_t total_steps = 0;
  std::size_t episodes = 0;
  std::size_t stuck_events = 0;
  std::size_t dfa_replays = 0;
  std::size_t dfa_divergences = 0;
  std::size_t dfa_conflicts = 0;
  std::size_t dfa_transitions = 0;
  std::string stop_reason;
  std::string error;  // set when the run aborted
  std::int64_t wall_time_ms = 0;

  // Step of the first recorded failure (1-based global step), if any.
  std::optional<std::size_t> first_failure_step;
};

void to_json(Json& j, const RunReport& r);
void from_json(const Json& j, RunReport& r);

RunReport read_report(const std::filesystem::path& dir_or_file);
void write_report(const std::filesystem::path& dir, const RunReport& report);

inline constexpr std::string_view kMetricsHeader = "step,elapsed_ms,states,transitions,unique_failures";
std::string format_metrics_row(const MetricsRow& row);

// Append-only metrics.csv writer; each row is flushed as it is written.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::filesystem::path& file);
  void append(const MetricsRow& row);

 private:
  std::ofstream out_;
};

}  // namespace explor
