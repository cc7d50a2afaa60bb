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

// In-process DevTools stand-in: a websocket server on 127.0.0.1 that plays a
// scripted site. Enough of the protocol for the browser backend.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "explor/env.hpp"

namespace explor::testing {

struct FakeElement {
  std::string tag;
  std::map<std::string, std::string> attrs;
  bool rendered = true;
  bool visible = true;
  bool disabled = false;
  std::vector<std::string> options;
  // Click behaviour.
  std::string navigate;       // absolute URL
  std::string throw_message;  // uncaught exception description
  int xhr_status = 0;         // subresource answered with this status
  std::string request_url;    // subresource the page tries to load
};

struct FakePage {
  std::string url;
  std::string html;
  int status = 200;
  std::vector<FakeElement> elements;
};

class FakeDevtools {
 public:
  FakeDevtools();
  ~FakeDevtools();
  FakeDevtools(const FakeDevtools&) = delete;
  FakeDevtools& operator=(const FakeDevtools&) = delete;

  std::string ws_url() const;     // ws://127.0.0.1:<port>/devtools/page/fake
  std::string http_url() const;   // http://127.0.0.1:<port>

  void add_page(FakePage page);
  // Next `n` Runtime.evaluate commands answer with a protocol error.
  void fail_evaluates(int n);

  // Observations.
  std::vector<std::string> methods() const;
  std::vector<std::string> inserted_text() const;
  std::vector<Json> commands(const std::string& method) const;
  std::string current_url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace explor::testing
