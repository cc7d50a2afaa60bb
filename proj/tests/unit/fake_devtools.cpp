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

#include "fake_devtools.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <regex>

#include "explor/browser_backend.hpp"

namespace explor::testing {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

struct FakeDevtools::Impl {
  net::io_context ioc;
  tcp::acceptor acceptor{ioc};
  unsigned short port = 0;
  std::thread thread;
  std::atomic<bool> stopping{false};

  mutable std::mutex mu;
  std::map<std::string, FakePage> pages;
  std::string url = "about:blank";
  int failing_evaluates = 0;
  int next_request = 1;
  std::size_t rect_index = 0;
  std::size_t focus_index = 0;
  std::vector<Json> log;
  std::vector<std::string> typed;
  std::vector<tcp::socket*> live;

  FakePage current() const {
    auto it = pages.find(url);
    if (it != pages.end()) return it->second;
    return FakePage{url, "<html><head></head><body></body></html>", 200, {}};
  }

  static Json event(const std::string& method, Json params) {
    return Json{{"method", method}, {"params", std::move(params)}};
  }

  void load(const std::string& target, std::vector<Json>& out) {
    url = target;
    const std::string id = "r" + std::to_string(next_request++);
    out.push_back(event("Network.requestWillBeSent", {{"requestId", id}, {"request", {{"url", target}}}}));
    out.push_back(event("Network.responseReceived",
                        {{"requestId", id}, {"response", {{"url", target}, {"status", current().status}}}}));
    out.push_back(event("Network.loadingFinished", {{"requestId", id}}));
  }

  static std::size_t element_index(const std::string& expr) {
    static const std::regex kIndex(R"(__explorEls\[(\d+)\])");
    std::smatch m;
    if (std::regex_search(expr, m, kIndex)) return std::stoul(m[1]);
    return static_cast<std::size_t>(-1);
  }

  static Json value(const std::string& s) {
    return {{"result", {{"result", {{"type", "string"}, {"value", s}}}}}};
  }

  // Returns the result object (or an error object) plus trailing events.
  Json handle(const Json& cmd, std::vector<Json>& events) {
    std::lock_guard lock(mu);
    log.push_back(cmd);
    const std::string method = cmd.value("method", "");
    const Json params = cmd.value("params", Json::object());
    if (method == "Page.navigate") {
      load(params.value("url", ""), events);
      return {{"result", {{"frameId", "main"}}}};
    }
    if (method == "Runtime.evaluate") {
      if (failing_evaluates > 0) {
        --failing_evaluates;
        return {{"error", {{"code", -32000}, {"message", "Execution context was destroyed."}}}};
      }
      const std::string expr = params.value("expression", "");
      const FakePage page = current();
      if (expr.starts_with(kSnapshotMarker)) {
        Json els = Json::array();
        for (const auto& e : page.elements)
          els.push_back({{"tag", e.tag}, {"attributes", e.attrs}, {"rendered", e.rendered},
                         {"visible", e.visible}, {"disabled", e.disabled}, {"options", e.options}});
        return value(Json{{"url", page.url}, {"html", page.html}, {"elements", els}}.dump());
      }
      const std::size_t i = element_index(expr);
      if (i >= page.elements.size()) return value("null");
      if (expr.starts_with(kRectMarker)) {
        rect_index = i;
        return value(R"({"x": 10, "y": 20})");
      }
      if (expr.starts_with(kFocusMarker)) focus_index = i;
      return value("true");
    }
    if (method == "Input.dispatchMouseEvent" && params.value("type", "") == "mouseReleased") {
      const FakePage page = current();
      if (rect_index < page.elements.size()) {
        const FakeElement e = page.elements[rect_index];
        if (!e.throw_message.empty())
          events.push_back(event("Runtime.exceptionThrown",
                                 {{"exceptionDetails",
                                   {{"text", "Uncaught"}, {"url", page.url},
                                    {"exception", {{"description", e.throw_message}}}}}}));
        if (e.xhr_status) {
          const std::string id = "r" + std::to_string(next_request++);
          const std::string api = page.url + "api";
          events.push_back(event("Network.requestWillBeSent", {{"requestId", id}, {"request", {{"url", api}}}}));
          events.push_back(event("Network.responseReceived",
                                 {{"requestId", id}, {"response", {{"url", api}, {"status", e.xhr_status}}}}));
          events.push_back(event("Network.loadingFinished", {{"requestId", id}}));
        }
        if (!e.request_url.empty())
          events.push_back(event("Fetch.requestPaused",
                                 {{"requestId", "f" + std::to_string(next_request++)},
                                  {"request", {{"url", e.request_url}}}}));
        if (!e.navigate.empty()) load(e.navigate, events);
      }
      return {{"result", Json::object()}};
    }
    if (method == "Input.insertText") {
      typed.push_back(params.value("text", ""));
      return {{"result", Json::object()}};
    }
    return {{"result", Json::object()}};
  }

  void serve_websocket(tcp::socket socket, http::request<http::string_body> req) {
    beast::error_code ec;
    socket.set_option(tcp::no_delay(true), ec);
    websocket::stream<tcp::socket> ws(std::move(socket));
    ws.accept(req, ec);
    if (ec) return;
    ws.text(true);
    {
      std::lock_guard lock(mu);
      live.push_back(&ws.next_layer());
    }
    beast::flat_buffer buffer;
    while (!stopping) {
      ws.read(buffer, ec);
      if (ec) break;
      const Json cmd = Json::parse(beast::buffers_to_string(buffer.data()), nullptr, false);
      buffer.consume(buffer.size());
      if (!cmd.is_object()) continue;
      std::vector<Json> events;
      Json reply = handle(cmd, events);
      reply["id"] = cmd.value("id", 0);
      ws.write(net::buffer(reply.dump()), ec);
      for (const auto& e : events) ws.write(net::buffer(e.dump()), ec);
      if (ec) break;
    }
    std::lock_guard lock(mu);
    std::erase(live, &ws.next_layer());
  }

  void serve(tcp::socket socket) {
    beast::flat_buffer buffer;
    http::request<http::string_body> req;
    beast::error_code ec;
    http::read(socket, buffer, req, ec);
    if (ec) return;
    if (websocket::is_upgrade(req)) return serve_websocket(std::move(socket), std::move(req));
    http::response<http::string_body> res{http::status::ok, req.version()};
    if (req.target() == "/json/list") {
      res.body() = Json::array({{{"type", "page"},
                                 {"webSocketDebuggerUrl", "ws://127.0.0.1:" + std::to_string(port) +
                                                              "/devtools/page/fake"}}})
                       .dump();
    } else {
      res.result(http::status::not_found);
    }
    res.prepare_payload();
    http::write(socket, res, ec);
  }

  void run() {
    while (!stopping) {
      beast::error_code ec;
      tcp::socket socket(ioc);
      acceptor.accept(socket, ec);
      if (ec || stopping) break;
      serve(std::move(socket));
    }
  }
};

FakeDevtools::FakeDevtools() : impl_(std::make_unique<Impl>()) {
  tcp::endpoint ep(net::ip::make_address("127.0.0.1"), 0);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(net::socket_base::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
  impl_->port = impl_->acceptor.local_endpoint().port();
  impl_->thread = std::thread([this] { impl_->run(); });
}

FakeDevtools::~FakeDevtools() {
  impl_->stopping = true;
  {
    std::lock_guard lock(impl_->mu);
    for (auto* s : impl_->live) {
      beast::error_code ec;
      s->shutdown(tcp::socket::shutdown_both, ec);
    }
  }
  // Wake a blocking accept.
  beast::error_code ec;
  tcp::socket poke(impl_->ioc);
  poke.connect(tcp::endpoint(net::ip::make_address("127.0.0.1"), impl_->port), ec);
  impl_->thread.join();
}

std::string FakeDevtools::ws_url() const {
  return "ws://127.0.0.1:" + std::to_string(impl_->port) + "/devtools/page/fake";
}

std::string FakeDevtools::http_url() const { return "http://127.0.0.1:" + std::to_string(impl_->port); }

void FakeDevtools::add_page(FakePage page) {
  std::lock_guard lock(impl_->mu);
  auto url = page.url;
  impl_->pages[url] = std::move(page);
}

void FakeDevtools::fail_evaluates(int n) {
  std::lock_guard lock(impl_->mu);
  impl_->failing_evaluates = n;
}

std::vector<std::string> FakeDevtools::methods() const {
  std::lock_guard lock(impl_->mu);
  std::vector<std::string> out;
  for (const auto& c : impl_->log) out.push_back(c.value("method", ""));
  return out;
}

std::vector<std::string> FakeDevtools::inserted_text() const {
  std::lock_guard lock(impl_->mu);
  return impl_->typed;
}

std::vector<Json> FakeDevtools::commands(const std::string& method) const {
  std::lock_guard lock(impl_->mu);
  std::vector<Json> out;
  for (const auto& c : impl_->log)
    if (c.value("method", "") == method) out.push_back(c);
  return out;
}

std::string FakeDevtools::current_url() const {
  std::lock_guard lock(impl_->mu);
  return impl_->url;
}

}  // namespace explor::testing
