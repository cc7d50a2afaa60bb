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

#include "explor/cdp_client.hpp"

#include <boost/asio/connect.hpp>
#include <boost/asio/executor_work_guard.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "explor/url.hpp"

namespace explor {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

WsEndpoint WsEndpoint::parse(std::string_view ws_url) {
  const auto url = parse_url(ws_url);
  if (!url || (url->scheme != "ws" && url->scheme != "http"))
    throw ProtocolError("not a ws:// endpoint: " + std::string(ws_url));
  WsEndpoint e;
  e.host = url->host;
  e.port = url->port.empty() ? "80" : url->port;
  e.target = url->path.empty() ? "/" : url->path;
  if (!url->query.empty()) e.target += "?" + url->query;
  return e;
}

std::string http_get(const std::string& host, const std::string& port, const std::string& target,
                     std::chrono::milliseconds timeout) {
  net::io_context ioc;
  beast::tcp_stream stream(ioc);
  tcp::resolver resolver(ioc);
  beast::error_code ec;
  const auto results = resolver.resolve(host, port, ec);
  if (ec) throw ProtocolError("resolve " + host + ": " + ec.message());

  http::request<http::string_body> req{http::verb::get, target, 11};
  req.set(http::field::host, host + ":" + port);
  http::response<http::string_body> res;
  beast::flat_buffer buffer;

  stream.expires_after(timeout);
  stream.async_connect(results, [&](beast::error_code e, const tcp::endpoint&) {
    if (e) {
      ec = e;
      return;
    }
    http::async_write(stream, req, [&](beast::error_code e2, std::size_t) {
      if (e2) {
        ec = e2;
        return;
      }
      http::async_read(stream, buffer, res, [&](beast::error_code e3, std::size_t) { ec = e3; });
    });
  });
  ioc.run();
  if (ec) throw ProtocolError("GET " + target + ": " + ec.message());
  return res.body();
}

struct CdpClient::Impl {
  net::io_context ioc;
  net::executor_work_guard<net::io_context::executor_type> work{ioc.get_executor()};
  websocket::stream<beast::tcp_stream> ws{ioc};
  beast::flat_buffer buffer;
  std::deque<std::string> outbox;

  mutable std::mutex mu;
  std::condition_variable cv;
  std::map<int, Json> responses;
  std::deque<Json> events;
  bool open = false;
  std::string close_reason;
  int next_id = 1;
  std::thread thread;

  void fail(const std::string& why) {
    std::lock_guard lock(mu);
    if (open) close_reason = why;
    open = false;
    cv.notify_all();
  }

  void read_loop() {
    ws.async_read(buffer, [this](beast::error_code ec, std::size_t) {
      if (ec) {
        fail("websocket read: " + ec.message());
        return;
      }
      const std::string text = beast::buffers_to_string(buffer.data());
      buffer.consume(buffer.size());
      Json msg = Json::parse(text, nullptr, false);
      if (!msg.is_discarded()) {
        std::lock_guard lock(mu);
        if (msg.contains("id") && msg["id"].is_number_integer()) {
          const int id = msg["id"].get<int>();
          responses[id] = std::move(msg);
        } else {
          events.push_back(std::move(msg));
        }
        cv.notify_all();
      }
      read_loop();
    });
  }

  void write_next() {
    ws.async_write(net::buffer(outbox.front()), [this](beast::error_code ec, std::size_t) {
      if (ec) {
        fail("websocket write: " + ec.message());
        return;
      }
      outbox.pop_front();
      if (!outbox.empty()) write_next();
    });
  }

  void enqueue(std::string text) {
    net::post(ioc, [this, text = std::move(text)]() mutable {
      outbox.push_back(std::move(text));
      if (outbox.size() == 1) write_next();
    });
  }
};

CdpClient::CdpClient(const std::string& ws_url, std::chrono::milliseconds connect_timeout)
    : impl_(std::make_unique<Impl>()) {
  const auto ep = WsEndpoint::parse(ws_url);
  auto& ws = impl_->ws;
  beast::error_code ec;
  bool done = false;
  tcp::resolver resolver(impl_->ioc);
  const auto results = resolver.resolve(ep.host, ep.port, ec);
  if (ec) throw ProtocolError("resolve " + ep.host + ": " + ec.message());

  beast::get_lowest_layer(ws).expires_after(connect_timeout);
  beast::get_lowest_layer(ws).async_connect(results, [&](beast::error_code e, const tcp::endpoint&) {
    if (e) {
      ec = e;
      done = true;
      return;
    }
    beast::get_lowest_layer(ws).expires_after(connect_timeout);
    ws.async_handshake(ep.host + ":" + ep.port, ep.target, [&](beast::error_code e2) {
      ec = e2;
      done = true;
    });
  });
  const auto deadline = std::chrono::steady_clock::now() + connect_timeout * 2;
  while (!done && std::chrono::steady_clock::now() < deadline)
    impl_->ioc.run_one_until(deadline);
  if (ec) throw ProtocolError("connect " + ws_url + ": " + ec.message());
  if (!done || !ws.is_open()) throw ProtocolError("connect " + ws_url + ": timed out");
  impl_->ioc.restart();

  beast::get_lowest_layer(ws).expires_never();
  beast::get_lowest_layer(ws).socket().set_option(tcp::no_delay(true), ec);
  ws.read_message_max(64u << 20);
  ws.text(true);
  impl_->open = true;
  impl_->read_loop();
  impl_->thread = std::thread([this] { impl_->ioc.run(); });
}

CdpClient::~CdpClient() { close(); }

void CdpClient::close() {
  if (!impl_ || !impl_->thread.joinable()) return;
  net::post(impl_->ioc, [this] {
    beast::error_code ec;
    beast::get_lowest_layer(impl_->ws).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(impl_->ws).socket().close(ec);
  });
  impl_->work.reset();
  impl_->thread.join();
  impl_->ioc.stop();
  std::lock_guard lock(impl_->mu);
  impl_->open = false;
}

bool CdpClient::connected() const {
  std::lock_guard lock(impl_->mu);
  return impl_->open;
}

int CdpClient::send(const std::string& method, Json params) {
  int id;
  {
    std::lock_guard lock(impl_->mu);
    if (!impl_->open) throw ProtocolError("devtools connection closed: " + impl_->close_reason);
    id = impl_->next_id++;
  }
  impl_->enqueue(Json{{"id", id}, {"method", method}, {"params", std::move(params)}}.dump());
  return id;
}

Json CdpClient::call(const std::string& method, Json params, std::chrono::milliseconds timeout) {
  const int id = send(method, std::move(params));
  std::unique_lock lock(impl_->mu);
  const bool ready = impl_->cv.wait_for(
      lock, timeout, [&] { return impl_->responses.count(id) || !impl_->open; });
  auto it = impl_->responses.find(id);
  if (it == impl_->responses.end()) {
    if (!ready) throw ProtocolError(method + ": timed out");
    throw ProtocolError("devtools connection closed: " + impl_->close_reason);
  }
  Json msg = std::move(it->second);
  impl_->responses.erase(it);
  if (msg.contains("error"))
    throw ProtocolError(method + ": " + msg["error"].value("message", msg["error"].dump()));
  return msg.value("result", Json::object());
}

std::optional<Json> CdpClient::next_event(std::chrono::steady_clock::time_point deadline) {
  std::unique_lock lock(impl_->mu);
  impl_->cv.wait_until(lock, deadline, [&] { return !impl_->events.empty() || !impl_->open; });
  if (impl_->events.empty()) return std::nullopt;
  Json e = std::move(impl_->events.front());
  impl_->events.pop_front();
  return e;
}

}  // namespace explor
