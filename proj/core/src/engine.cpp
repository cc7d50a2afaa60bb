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

#include "explor/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "explor/input_gen.hpp"

namespace explor {

namespace {
constexpr double kDefaultSimStuckSteps = 200;
constexpr double kDefaultBrowserStuckSecs = 120;
constexpr std::size_t kStuckCandidates = 3;
// Keeps the input stream independent of the policy stream for one seed.
constexpr std::uint64_t kInputStreamSalt = 0x9e3779b97f4a7c15ULL;

std::string_view backend_name(BackendKind b) { return b == BackendKind::kSim ? "sim" : "browser"; }
std::string_view policy_name(PolicyKind p) {
  return p == PolicyKind::kCuriosity ? "curiosity" : "uniform_random";
}
}  // namespace

double RunConfig::effective_stuck_threshold() const {
  if (stuck_threshold) return *stuck_threshold;
  return backend == BackendKind::kSim ? kDefaultSimStuckSteps : kDefaultBrowserStuckSecs;
}

double RunConfig::effective_initial_q() const {
  if (initial_q) return *initial_q;
  return lambda < 1.0 ? 1.0 / (1.0 - lambda) : 0.0;  // unbounded at lambda = 1
}

void RunConfig::validate() const {
  if (!(time_budget_secs >= 0)) throw std::invalid_argument("time budget must be non-negative");
  if (max_steps_per_episode == 0) throw std::invalid_argument("max steps per episode must be positive");
  if (!(effective_stuck_threshold() > 0)) throw std::invalid_argument("stuck threshold must be positive");
  if (!(similarity_threshold > 0 && similarity_threshold <= 1))
    throw std::invalid_argument("similarity threshold must lie in (0, 1]");
  if (!(lambda >= 0 && lambda <= 1)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
  if (initial_q && !std::isfinite(*initial_q)) throw std::invalid_argument("initial Q must be finite");
  if (network_idle_ms <= 0 || max_wait_ms <= 0)
    throw std::invalid_argument("quiescence timeouts must be positive");
}

void to_json(Json& j, const RunConfig& c) {
  j = Json{{"backend", backend_name(c.backend)},
           {"target", c.target},
           {"time_budget_secs", c.time_budget_secs},
           {"max_steps_per_episode", c.max_steps_per_episode},
           {"stuck_threshold", c.effective_stuck_threshold()},
           {"similarity_threshold", c.similarity_threshold},
           {"lambda", c.lambda},
           {"tau", c.tau},
           {"initial_q", c.effective_initial_q()},
           {"seed", c.seed},
           {"out_dir", c.out_dir.string()},
           {"export_dfa", c.export_dfa},
           {"policy", policy_name(c.policy)},
           {"dfa_guidance", c.dfa_guidance},
           {"max_total_steps", c.max_total_steps},
           {"stop_on_first_failure", c.stop_on_first_failure}};
  if (c.backend == BackendKind::kBrowser) {
    j["devtools_endpoint"] = c.devtools_endpoint;
    j["browser_path"] = c.browser_path;
    j["network_idle_ms"] = c.network_idle_ms;
    j["max_wait_ms"] = c.max_wait_ms;
    j["server_errors_only"] = c.server_errors_only;
  }
}

void from_json(const Json& j, RunConfig& c) {
  c = RunConfig{};
  c.backend = j.value("backend", "sim") == "browser" ? BackendKind::kBrowser : BackendKind::kSim;
  c.target = j.value("target", "");
  c.time_budget_secs = j.value("time_budget_secs", c.time_budget_secs);
  c.max_steps_per_episode = j.value("max_steps_per_episode", c.max_steps_per_episode);
  if (j.contains("stuck_threshold")) c.stuck_threshold = j.at("stuck_threshold").get<double>();
  c.similarity_threshold = j.value("similarity_threshold", c.similarity_threshold);
  c.lambda = j.value("lambda", c.lambda);
  c.tau = j.value("tau", c.tau);
  if (j.contains("initial_q")) c.initial_q = j.at("initial_q").get<double>();
  c.seed = j.value("seed", c.seed);
  c.out_dir = j.value("out_dir", "");
  c.export_dfa = j.value("export_dfa", false);
  c.policy = j.value("policy", "curiosity") == "uniform_random" ? PolicyKind::kUniformRandom
                                                               : PolicyKind::kCuriosity;
  c.dfa_guidance = j.value("dfa_guidance", true);
  c.max_total_steps = j.value("max_total_steps", std::size_t{0});
  c.stop_on_first_failure = j.value("stop_on_first_failure", false);
  c.devtools_endpoint = j.value("devtools_endpoint", "");
  c.browser_path = j.value("browser_path", "");
  c.network_idle_ms = j.value("network_idle_ms", c.network_idle_ms);
  c.max_wait_ms = j.value("max_wait_ms", c.max_wait_ms);
  c.server_errors_only = j.value("server_errors_only", false);
}

ActionCatalog::ActionCatalog() {
  actions_.push_back(ActionDescriptor::noop());
  ids_.emplace(actions_.front().key(), kNoopAction);
}

ActionId ActionCatalog::intern(const ActionDescriptor& d) {
  auto [it, inserted] = ids_.try_emplace(d.key(), ActionId{static_cast<std::uint32_t>(actions_.size())});
  if (inserted) actions_.push_back(d);
  return it->second;
}

Engine::Engine(Environment& env, RunConfig config)
    : env_(env),
      config_(std::move(config)),
      registry_(config_.similarity_threshold),
      policy_(PolicyConfig{config_.lambda, config_.tau, config_.effective_initial_q()}),
      policy_rng_(config_.seed),
      input_rng_(config_.seed ^ kInputStreamSalt) {
  config_.validate();
}

BoundAction Engine::bind(ActionId id) {
  BoundAction b;
  b.descriptor = catalog_.at(id);
  if (b.descriptor.kind == ActionKind::kFill || b.descriptor.kind == ActionKind::kSelect) {
    InputConstraints c = b.descriptor.input_constraints.value_or(InputConstraints{});
    if (b.descriptor.kind == ActionKind::kSelect) c.input_type = "select";
    b.input_value = generate_input(c, input_rng_);
  }
  return b;
}

StateId Engine::observe_page(const Page& page, std::vector<ElementInfo> elements) {
  const auto abs = abstract_page(page, elements, registry_, env_.scope_host(), total_steps_);
  if (abs.created) {
    last_progress_step_ = total_steps_;
    last_progress_time_ = now();
  }
  std::vector<ActionId> ids;
  ids.reserve(abs.actions.size());
  for (const auto& a : abs.actions) ids.push_back(catalog_.intern(a));
  policy_.register_actions(abs.state, ids);
  return abs.state;
}

void Engine::begin_episode(std::vector<BoundAction> pending) {
  ++episodes_;
  Json checkpoint = env_.checkpoint();
  page_ = env_.reset();
  const StateId s = observe_page(page_, env_.snapshot_elements());
  if (!dfa_) dfa_.emplace(s);
  current_state_ = s;
  test_case_ = TestCase{};
  test_case_.start = s;
  test_case_.seed = config_.seed;
  test_case_.env_checkpoint = std::move(checkpoint);
  episode_steps_ = 0;
  episode_over_ = false;
  replaying_ = false;
  if (pending.empty()) pending.push_back(BoundAction{ActionDescriptor::noop(), std::nullopt});
  pending_ = std::move(pending);
}

void Engine::step() {
  if (pending_.empty()) throw std::logic_error("step() without pending actions");
  const ExecuteResult result = env_.execute(page_, pending_);
  const std::size_t performed = result.intermediate.size();

  StateId prev = current_state_;
  for (std::size_t k = 0; k < performed; ++k) {
    const BoundAction& action = pending_[k];
    const bool last = k + 1 == performed;
    const bool noop = action.descriptor.is_noop();
    if (!noop) ++total_steps_;

    StateId next;
    if (last) {
      next = observe_page(result.intermediate[k], env_.snapshot_elements());
    } else {
      const auto m = registry_.assign(result.intermediate[k], total_steps_);
      if (m.created) {
        last_progress_step_ = total_steps_;
        last_progress_time_ = now();
      }
      next = m.id;
    }

    std::vector<Failure> failures;
    for (const auto& f : result.failures) {
      const bool mine = f.step == k || (last && f.step >= performed);
      if (mine) failures.push_back(f);
    }

    if (noop) {
      if (!failures.empty()) record_step(prev, action, next, std::move(failures));
      prev = next;
      continue;
    }

    const ActionId aid = catalog_.intern(action.descriptor);
    const Transition t{prev, aid, next};
    const double reward = counts_.observe(t);
    dfa_->add_transition(prev, aid, next);
    if (last) policy_.update(prev, aid, reward, next);
    record_step(prev, action, next, std::move(failures));
    push_metrics();
    prev = next;
  }

  if (performed == 0) prev = observe_page(result.page, env_.snapshot_elements());
  if (result.diverged_at && replaying_) ++dfa_divergences_;
  current_state_ = prev;
  page_ = result.page;
  if (!replaying_ && !pending_.front().descriptor.is_noop()) ++episode_steps_;
  replaying_ = false;
  pending_.clear();
}

void Engine::record_step(StateId prev, const BoundAction& action, StateId next,
                         std::vector<Failure> failures) {
  if (!action.descriptor.is_noop()) test_case_.steps.push_back({prev, action, next});
  if (failures.empty()) return;

  total_failures_ += failures.size();
  if (!first_failure_step_) first_failure_step_ = total_steps_;
  std::optional<std::size_t> snapshot;
  for (auto& f : failures) {
    f.step = test_case_.steps.size();
    const auto key = f.dedup_key();
    if (failure_keys_.count(key)) continue;
    if (!snapshot) {
      TestCase tc = test_case_;
      tc.failed = true;
      snapshot = failed_cases_.size();
      failed_cases_.push_back(std::move(tc));
    }
    failure_keys_.emplace(key, failures_.size());
    failures_.push_back({failures_.size(), std::move(f), *snapshot});
  }
}

void Engine::select_next() {
  if (!policy_.has_actions(current_state_)) {
    episode_over_ = true;  // dead end
    return;
  }
  const ActionId aid = config_.policy == PolicyKind::kCuriosity
                           ? policy_.select_action(current_state_, policy_rng_)
                           : policy_.select_uniform(current_state_, policy_rng_);
  pending_ = {bind(aid)};
}

std::vector<ActionId> Engine::handle_stuck() {
  ++stuck_events_;
  last_progress_step_ = total_steps_;
  last_progress_time_ = now();

  const auto ranked = dfa_->ranked_by_curiosity(counts_);
  std::size_t tried = 0;
  for (const auto& candidate : ranked) {
    if (tried++ == kStuckCandidates) break;
    auto trace = dfa_->trace_to(candidate);
    if (!trace || trace->size() > config_.max_steps_per_episode) continue;
    std::vector<BoundAction> bound;
    bound.reserve(trace->size());
    for (ActionId a : *trace) bound.push_back(bind(a));
    begin_episode(std::move(bound));
    episode_steps_ = trace->size();
    replaying_ = true;
    ++dfa_replays_;
    return *trace;
  }
  begin_episode();
  return {};
}

bool Engine::stuck() const {
  const double threshold = config_.effective_stuck_threshold();
  if (config_.backend == BackendKind::kSim)
    return static_cast<double>(total_steps_ - last_progress_step_) >= threshold;
  const auto idle = std::chrono::duration<double>(now() - last_progress_time_).count();
  return idle >= threshold;
}

bool Engine::budget_exhausted() const {
  if (config_.max_total_steps && total_steps_ >= config_.max_total_steps) return true;
  return std::chrono::duration<double>(now()).count() >= config_.time_budget_secs;
}

void Engine::push_metrics() {
  MetricsRow row{total_steps_, static_cast<std::int64_t>(now().count()), registry_.size(),
                 dfa_ ? dfa_->size() : 0, failures_.size()};
  metrics_.push_back(row);
  if (metrics_writer_) metrics_writer_->append(row);
}

RunReport Engine::make_report() const {
  RunReport r;
  r.config = config_;
  for (const auto& s : registry_.states())
    r.states.push_back({s.id.value, s.canonical_url, s.first_seen_step, s.visit_count});
  r.actions = catalog_.all();
  for (const auto& [t, n] : counts_.entries())
    r.transitions.push_back({t.prev.value, t.action.value, t.next.value, n});
  for (const auto& [key, q] : policy_.entries())
    r.q_table.push_back({key.first.value, key.second.value, q});
  r.failures = failures_;
  r.test_cases = failed_cases_;
  r.metrics = metrics_;
  r.total_failures = total_failures_;
  r.total_steps = total_steps_;
  r.episodes = episodes_;
  r.stuck_events = stuck_events_;
  r.dfa_replays = dfa_replays_;
  r.dfa_divergences = dfa_divergences_;
  r.dfa_conflicts = dfa_ ? dfa_->conflict_count() : 0;
  r.dfa_transitions = dfa_ ? dfa_->size() : 0;
  r.stop_reason = stop_reason_;
  r.first_failure_step = first_failure_step_;
  return r;
}

void Engine::write_outputs(const RunReport& report) const {
  if (config_.out_dir.empty()) return;
  write_report(config_.out_dir, report);
  if (config_.export_dfa && dfa_) {
    std::ofstream dot(config_.out_dir / "dfa.dot");
    dot << to_dot(
        *dfa_,
        [&](StateId s) { return std::to_string(s.value) + "\n" + registry_.at(s).canonical_url; },
        [&](ActionId a) {
          const auto& d = catalog_.at(a);
          return std::string(to_string(d.kind)) + " " + d.locator.signature();
        },
        counts_);
  }
}

bool Engine::advance() {
  if (budget_exhausted()) {
    stop_reason_ = "budget_exhausted";
    return false;
  }
  if (episode_over_) {
    begin_episode();
    return true;
  }
  step();
  if (config_.stop_on_first_failure && !failures_.empty()) {
    stop_reason_ = "first_failure";
    return false;
  }
  const bool guided = config_.dfa_guidance && config_.policy == PolicyKind::kCuriosity;
  if (guided && stuck()) {
    handle_stuck();
    return true;
  }
  if (episode_steps_ >= config_.max_steps_per_episode) {
    episode_over_ = true;
    return true;
  }
  select_next();
  return true;
}

RunReport Engine::run() {
  const auto wall_start = std::chrono::steady_clock::now();
  auto wall_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 wall_start)
        .count();
  };
  if (!config_.out_dir.empty())
    metrics_writer_ = std::make_unique<MetricsWriter>(config_.out_dir / "metrics.csv");

  try {
    begin_episode();
    push_metrics();
    while (advance()) {
    }
  } catch (const BackendUnavailable& e) {
    RunReport partial = make_report();
    partial.stop_reason = "backend_unavailable";
    partial.error = e.what();
    partial.wall_time_ms = wall_ms();
    write_outputs(partial);
    throw;
  }

  RunReport report = make_report();
  report.wall_time_ms = wall_ms();
  write_outputs(report);
  return report;
}

}  // namespace explor
