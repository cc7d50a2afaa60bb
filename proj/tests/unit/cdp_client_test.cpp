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

#include <gtest/gtest.h>

#include "explor/browser_backend.hpp"
#include "explor/cdp_client.hpp"
#include "fake_devtools.hpp"

namespace explor {
namespace {

using namespace explor::testing;
using namespace std::chrono_literals;

TEST(WsEndpoint, Parse) {
  const auto e = WsEndpoint::parse("ws://127.0.0.1:9222/devtools/page/AB12");
  EXPECT_EQ(e.host, "127.0.0.1");
  EXPECT_EQ(e.port, "9222");
  EXPECT_EQ(e.target, "/devtools/page/AB12");
  EXPECT_EQ(WsEndpoint::parse("http://localhost:9222").target, "/");
  EXPECT_THROW(WsEndpoint::parse("ftp://x/y"), ProtocolError);
  EXPECT_THROW(WsEndpoint::parse("not a url"), ProtocolError);
}

TEST(CdpClient, CallReturnsResultAndQueuesEvents) {
  FakeDevtools server;
  server.add_page({"http://app.test/", "<html><body></body></html>", 200, {}});
  CdpClient client(server.ws_url());
  EXPECT_TRUE(client.connected());
  const Json r = client.call("Page.navigate", {{"url", "http://app.test/"}});
  EXPECT_EQ(r["frameId"], "main");
  const auto deadline = std::chrono::steady_clock::now() + 2s;
  std::vector<std::string> seen;
  while (seen.size() < 3) {
    auto e = client.next_event(deadline);
    ASSERT_TRUE(e);
    seen.push_back((*e)["method"]);
  }
  EXPECT_EQ(seen, (std::vector<std::string>{"Network.requestWillBeSent", "Network.responseReceived",
                                            "Network.loadingFinished"}));
  EXPECT_FALSE(client.next_event(std::chrono::steady_clock::now() + 50ms));
}

TEST(CdpClient, ErrorResponseThrows) {
  FakeDevtools server;
  CdpClient client(server.ws_url());
  server.fail_evaluates(1);
  EXPECT_THROW(client.call("Runtime.evaluate", {{"expression", "1"}}), ProtocolError);
  EXPECT_NO_THROW(client.call("Runtime.evaluate", {{"expression", "1"}}));
}

TEST(CdpClient, IdsAreMatched) {
  FakeDevtools server;
  CdpClient client(server.ws_url());
  const int a = client.send("Page.enable");
  const int b = client.send("Runtime.enable");
  EXPECT_EQ(b, a + 1);
  EXPECT_NO_THROW(client.call("Network.enable"));
  EXPECT_EQ(server.methods(), (std::vector<std::string>{"Page.enable", "Runtime.enable", "Network.enable"}));
}

TEST(CdpClient, ConnectFailureIsProtocolError) {
  std::string dead;
  {
    FakeDevtools server;
    dead = server.ws_url();
  }
  EXPECT_THROW(CdpClient(dead, 500ms), ProtocolError);
}

TEST(CdpClient, CallsAfterCloseThrow) {
  FakeDevtools server;
  CdpClient client(server.ws_url());
  client.close();
  EXPECT_FALSE(client.connected());
  EXPECT_THROW(client.call("Page.enable"), ProtocolError);
}

TEST(CdpClient, ResolvesPageTargetOverHttp) {
  FakeDevtools server;
  EXPECT_EQ(resolve_page_target(server.http_url()), server.ws_url());
  EXPECT_EQ(resolve_page_target(server.ws_url()), server.ws_url());
}

}  // namespace
}  // namespace explor
