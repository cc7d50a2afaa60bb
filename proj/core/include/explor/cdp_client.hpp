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

// Minimal DevTools protocol client: one websocket, JSON commands with ids,
// events queued in arrival order.

#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "explor/env.hpp"

namespace explor {

// Transport or protocol-level error (bad frame, timeout, error response).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WsEndpoint {
  std::string host;
  std::string port;
  std::string target;  // request path

  static WsEndpoint parse(std::string_view ws_url);  // throws ProtocolError
};

// Plain HTTP GET against a DevTools HTTP endpoint (/json/...).
std::string http_get(const std::string& host, const std::string& port, const std::string& target,
                     std::chrono::milliseconds timeout = std::chrono::seconds(5));

class CdpClient {
 public:
  explicit CdpClient(const std::string& ws_url,
                     std::chrono::milliseconds connect_timeout = std::chrono::seconds(5));
  ~CdpClient();
  CdpClient(const CdpClient&) = delete;
  CdpClient& operator=(const CdpClient&) = delete;

  // Sends a command and waits for its result object.
  Json call(const std::string& method, Json params = Json::object(),
            std::chrono::milliseconds timeout = std::chrono::seconds(10));

  // Fire-and-forget command; returns its id.
  int send(const std::string& method, Json params = Json::object());

  // Next queued event, waiting until `deadline`.
  std::optional<Json> next_event(std::chrono::steady_clock::time_point deadline);

  bool connected() const;
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace explor
