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

#include "explor/report.hpp"

#include <stdexcept>

namespace explor {

void to_json(Json& j, const RunReport& r) {
  Json states = Json::array();
  for (const auto& s : r.states)
    states.push_back({{"id", s.id}, {"canonical_url", s.canonical_url},
                      {"first_seen_step", s.first_seen_step}, {"visit_count", s.visit_count}});
  Json actions = Json::array();
  for (std::size_t i = 0; i < r.actions.size(); ++i) {
    Json a = r.actions[i];
    a["id"] = i;
    actions.push_back(std::move(a));
  }
  Json transitions = Json::array();
  for (const auto& t : r.transitions)
    transitions.push_back({{"prev", t.prev}, {"action", t.action}, {"next", t.next}, {"count", t.count}});
  Json q = Json::array();
  for (const auto& e : r.q_table) q.push_back({{"state", e.state}, {"action", e.action}, {"q", e.q}});
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json fj = f.failure;
    fj["id"] = f.id;
    fj["test_case"] = f.test_case;
    failures.push_back(std::move(fj));
  }
  Json metrics = Json::array();
  for (const auto& m : r.metrics)
    metrics.push_back({m.step, m.elapsed_ms, m.states, m.transitions, m.unique_failures});

  j = Json{{"config", r.config},
           {"summary",
            {{"total_steps", r.total_steps},
             {"episodes", r.episodes},
             {"states", r.states.size()},
             {"dfa_transitions", r.dfa_transitions},
             {"unique_failures", r.failures.size()},
             {"total_failures", r.total_failures},
             {"stuck_events", r.stuck_events},
             {"dfa_replays", r.dfa_replays},
             {"dfa_divergences", r.dfa_divergences},
             {"first_failure_step", r.first_failure_step ? Json(*r.first_failure_step) : Json(nullptr)},
             {"stop_reason", r.stop_reason},
             {"wall_time_ms", r.wall_time_ms}}},
           {"dfa_conflicts", r.dfa_conflicts},
           {"states", std::move(states)},
           {"actions", std::move(actions)},
           {"transitions", std::move(transitions)},
           {"q_table", std::move(q)},
           {"failures", std::move(failures)},
           {"test_cases", r.test_cases},
           {"metrics_columns", {"step", "elapsed_ms", "states", "transitions", "unique_failures"}},
           {"metrics", std::move(metrics)}};
  if (!r.error.empty()) j["error"] = r.error;
}

void from_json(const Json& j, RunReport& r) {
  r = RunReport{};
  r.config = j.value("config", Json::object());
  const Json summary = j.value("summary", Json::object());
  r.total_steps = summary.value("total_steps", std::size_t{0});
  r.episodes = summary.value("episodes", std::size_t{0});
  r.dfa_transitions = summary.value("dfa_transitions", std::size_t{0});
  r.total_failures = summary.value("total_failures", std::size_t{0});
  r.stuck_events = summary.value("stuck_events", std::size_t{0});
  r.dfa_replays = summary.value("dfa_replays", std::size_t{0});
  r.dfa_divergences = summary.value("dfa_divergences", std::size_t{0});
  r.stop_reason = summary.value("stop_reason", "");
  r.wall_time_ms = summary.value("wall_time_ms", std::int64_t{0});
  if (summary.contains("first_failure_step") && !summary.at("first_failure_step").is_null())
    r.first_failure_step = summary.at("first_failure_step").get<std::size_t>();
  r.dfa_conflicts = j.value("dfa_conflicts", std::size_t{0});
  r.error = j.value("error", "");

  for (const auto& s : j.value("states", Json::array()))
    r.states.push_back({s.at("id").get<std::uint32_t>(), s.at("canonical_url").get<std::string>(),
                        s.at("first_seen_step").get<std::size_t>(), s.at("visit_count").get<std::size_t>()});
  for (const auto& a : j.value("actions", Json::array())) r.actions.push_back(a.get<ActionDescriptor>());
  for (const auto& t : j.value("transitions", Json::array()))
    r.transitions.push_back({t.at("prev").get<std::uint32_t>(), t.at("action").get<std::uint32_t>(),
                             t.at("next").get<std::uint32_t>(), t.at("count").get<std::uint64_t>()});
  for (const auto& e : j.value("q_table", Json::array()))
    r.q_table.push_back({e.at("state").get<std::uint32_t>(), e.at("action").get<std::uint32_t>(),
                         e.at("q").get<double>()});
  for (const auto& f : j.value("failures", Json::array()))
    r.failures.push_back({f.at("id").get<std::size_t>(), f.get<Failure>(), f.at("test_case").get<std::size_t>()});
  for (const auto& t : j.value("test_cases", Json::array())) r.test_cases.push_back(t.get<TestCase>());
  for (const auto& m : j.value("metrics", Json::array()))
    r.metrics.push_back({m.at(0).get<std::size_t>(), m.at(1).get<std::int64_t>(), m.at(2).get<std::size_t>(),
                         m.at(3).get<std::size_t>(), m.at(4).get<std::size_t>()});
}

RunReport read_report(const std::filesystem::path& dir_or_file) {
  auto file = dir_or_file;
  if (std::filesystem::is_directory(file)) file /= "report.json";
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open report " + file.string());
  return Json::parse(in).get<RunReport>();
}

void write_report(const std::filesystem::path& dir, const RunReport& report) {
  std::filesystem::create_directories(dir);
  const auto tmp = dir / "report.json.tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << Json(report).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, dir / "report.json");
}

std::string format_metrics_row(const MetricsRow& r) {
  return std::to_string(r.step) + "," + std::to_string(r.elapsed_ms) + "," + std::to_string(r.states) +
         "," + std::to_string(r.transitions) + "," + std::to_string(r.unique_failures);
}

MetricsWriter::MetricsWriter(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  out_.open(file, std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write " + file.string());
  out_ << kMetricsHeader << "\n" << std::flush;
}

void MetricsWriter::append(const MetricsRow& row) { out_ << format_metrics_row(row) << "\n" << std::flush; }

}  // namespace explor
