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

// Environment backed by a headless Chromium driven over the DevTools
// protocol.

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "explor/cdp_client.hpp"
#include "explor/env.hpp"

namespace explor {

struct BrowserConfig {
  std::string entry_url;
  // ws://.../devtools/page/<id>, ws://.../devtools/browser/<id> or
  // http://host:port. Empty: launch `browser_path` (or the first Chromium
  // found on PATH).
  std::string devtools_endpoint;
  std::string browser_path;
  int network_idle_ms = 500;
  int max_wait_ms = 10000;
  bool server_errors_only = false;  // drop 4xx responses
};

// JS used for DOM snapshots. Exposed so test doubles can recognise it.
inline constexpr std::string_view kSnapshotMarker = "/*explor:snapshot*/";
inline constexpr std::string_view kRectMarker = "/*explor:rect*/";
inline constexpr std::string_view kFocusMarker = "/*explor:focus*/";
inline constexpr std::string_view kSetValueMarker = "/*explor:set-value*/";

class BrowserProcess;

class BrowserEnvironment final : public Environment {
 public:
  explicit BrowserEnvironment(BrowserConfig config);  // throws BackendUnavailable
  ~BrowserEnvironment() override;

  Page reset() override;
  ExecuteResult execute(const Page& current, std::span<const BoundAction> actions) override;
  std::vector<ElementInfo> snapshot_elements() override { return elements_; }
  std::string scope_host() const override { return scope_host_; }
  std::chrono::milliseconds elapsed() const override;

  // Every request URL the page attempted, and the subset that was blocked
  // for leaving the scope.
  const std::vector<std::string>& requested_urls() const { return requested_; }
  const std::vector<std::string>& blocked_urls() const { return blocked_; }

 private:
  struct Snapshot {
    Page page;
    std::vector<ElementInfo> elements;
  };

  void attach();
  Snapshot snapshot();
  Json evaluate(const std::string& expression);
  // Waits for quiescence, tagging failures seen meanwhile with `step`.
  void settle(std::size_t step, std::vector<Failure>& failures);
  void handle_event(const Json& event, std::size_t step, std::vector<Failure>& failures);
  bool dispatch(const BoundAction& action, std::size_t index);
  bool leaves_scope(const std::string& href, const std::string& page_url) const;

  template <typename F>
  auto retry_once(F&& f) -> decltype(f());

  BrowserConfig config_;
  std::string scope_host_;
  std::unique_ptr<BrowserProcess> process_;
  std::unique_ptr<CdpClient> client_;
  bool listeners_attached_ = false;
  std::chrono::steady_clock::time_point started_;
  std::vector<std::string> inflight_;
  std::chrono::steady_clock::time_point last_activity_;
  std::vector<Failure> carry_over_;  // seen during reset
  Page page_;
  std::vector<ElementInfo> elements_;
  std::vector<std::string> requested_;
  std::vector<std::string> blocked_;
};

// Resolves a DevTools endpoint to the websocket URL of a page target.
std::string resolve_page_target(const std::string& endpoint);

}  // namespace explor
