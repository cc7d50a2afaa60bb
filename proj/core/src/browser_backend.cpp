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

#include "explor/browser_backend.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <regex>

#include "explor/state_abstraction.hpp"
#include "explor/url.hpp"

extern char** environ;

namespace explor {

namespace {

using Clock = std::chrono::steady_clock;

const std::string kSnapshotJs = std::string(kSnapshotMarker) + R"JS((() => {
  const sel = 'a,button,input,select,textarea,[onclick],[role=button],[role=link]';
  const els = Array.from(document.querySelectorAll(sel));
  window.__explorEls = els;
  const out = els.map(e => {
    const attrs = {};
    for (const a of e.attributes) attrs[a.name] = a.value;
    const r = e.getBoundingClientRect();
    const cs = getComputedStyle(e);
    return {
      tag: e.tagName.toLowerCase(),
      attributes: attrs,
      rendered: r.width > 0 && r.height > 0,
      visible: !e.closest('[hidden]') && cs.display !== 'none' && cs.visibility !== 'hidden',
      disabled: !!e.disabled,
      options: e.tagName === 'SELECT' ? Array.from(e.options).map(o => o.value) : []
    };
  });
  const doc = document.documentElement ? document.documentElement.outerHTML : '';
  return JSON.stringify({url: location.href, html: doc, elements: out});
})())JS";

std::string element_js(std::string_view marker, std::size_t index, const std::string& body) {
  return std::string(marker) + "(() => { const e = window.__explorEls[" + std::to_string(index) +
         "]; if (!e) return 'null'; " + body + " })()";
}

bool typed_via_keyboard(const BoundAction& a) {
  if (a.descriptor.kind != ActionKind::kFill) return false;
  const std::string type =
      a.descriptor.input_constraints ? a.descriptor.input_constraints->input_type : "text";
  static const char* kTyped[] = {"text", "search", "email", "tel", "url", "password", "textarea", "number"};
  return std::any_of(std::begin(kTyped), std::end(kTyped), [&](const char* t) { return type == t; });
}

std::string find_browser(const std::string& hint) {
  if (!hint.empty()) return hint;
  const char* path = std::getenv("PATH");
  if (!path) return {};
  static const char* kNames[] = {"chromium", "chromium-browser", "google-chrome", "google-chrome-stable",
                                 "chrome", "headless_shell"};
  std::string dirs(path);
  for (const char* name : kNames) {
    std::size_t start = 0;
    while (start <= dirs.size()) {
      const auto end = std::min(dirs.find(':', start), dirs.size());
      const std::filesystem::path candidate = std::filesystem::path(dirs.substr(start, end - start)) / name;
      if (::access(candidate.c_str(), X_OK) == 0) return candidate.string();
      start = end + 1;
    }
  }
  return {};
}

}  // namespace

// Headless browser child process with a throwaway profile.
class BrowserProcess {
 public:
  explicit BrowserProcess(const std::string& executable) {
    char tmpl[] = "/tmp/explor-profile-XXXXXX";
    if (!::mkdtemp(tmpl)) throw BackendUnavailable("cannot create browser profile directory");
    profile_ = tmpl;

    int fds[2];
    if (::pipe(fds) != 0) throw BackendUnavailable("pipe failed");
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDERR_FILENO);
    posix_spawn_file_actions_addclose(&actions, fds[0]);

    std::vector<std::string> args = {executable,
                                     "--headless=new",
                                     "--remote-debugging-port=0",
                                     "--no-first-run",
                                     "--no-default-browser-check",
                                     "--disable-gpu",
                                     "--disable-extensions",
                                     "--no-sandbox",
                                     "--user-data-dir=" + profile_.string(),
                                     "about:blank"};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    const int rc = ::posix_spawn(&pid_, executable.c_str(), &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(fds[1]);
    if (rc != 0) {
      ::close(fds[0]);
      pid_ = -1;
      throw BackendUnavailable("cannot launch " + executable);
    }

    // Chromium announces "DevTools listening on ws://..." on stderr.
    std::string seen;
    const auto deadline = Clock::now() + std::chrono::seconds(20);
    static const std::regex kListening(R"(DevTools listening on (ws://\S+))");
    std::smatch m;
    while (Clock::now() < deadline) {
      pollfd p{fds[0], POLLIN, 0};
      if (::poll(&p, 1, 200) <= 0) continue;
      char buf[4096];
      const auto n = ::read(fds[0], buf, sizeof buf);
      if (n <= 0) break;
      seen.append(buf, static_cast<std::size_t>(n));
      if (std::regex_search(seen, m, kListening)) {
        endpoint_ = m[1];
        break;
      }
    }
    ::close(fds[0]);
    if (endpoint_.empty()) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      std::error_code ec;
      std::filesystem::remove_all(profile_, ec);
      throw BackendUnavailable("browser did not expose a DevTools endpoint");
    }
  }

  ~BrowserProcess() {
    if (pid_ > 0) {
      ::kill(pid_, SIGTERM);
      int status = 0;
      ::waitpid(pid_, &status, 0);
    }
    std::error_code ec;
    std::filesystem::remove_all(profile_, ec);
  }

  const std::string& endpoint() const { return endpoint_; }

 private:
  pid_t pid_ = -1;
  std::filesystem::path profile_;
  std::string endpoint_;
};

std::string resolve_page_target(const std::string& endpoint) {
  if (endpoint.find("/devtools/page/") != std::string::npos) return endpoint;
  const auto ep = WsEndpoint::parse(endpoint);
  const Json targets = Json::parse(http_get(ep.host, ep.port, "/json/list"), nullptr, false);
  if (targets.is_array()) {
    for (const auto& t : targets)
      if (t.value("type", "") == "page" && t.contains("webSocketDebuggerUrl"))
        return t["webSocketDebuggerUrl"].get<std::string>();
  }
  throw ProtocolError("no page target at " + endpoint);
}

template <typename F>
auto BrowserEnvironment::retry_once(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ProtocolError&) {
    try {
      return f();
    } catch (const ProtocolError& e) {
      throw BackendUnavailable(e.what());
    }
  }
}

BrowserEnvironment::BrowserEnvironment(BrowserConfig config)
    : config_(std::move(config)), started_(Clock::now()), last_activity_(started_) {
  const auto entry = parse_url(config_.entry_url);
  if (!entry || (entry->scheme != "http" && entry->scheme != "https"))
    throw BackendUnavailable("target must be an http(s) URL: " + config_.entry_url);
  scope_host_ = entry->host;

  std::string endpoint = config_.devtools_endpoint;
  if (endpoint.empty()) {
    const std::string exe = find_browser(config_.browser_path);
    if (exe.empty())
      throw BackendUnavailable("no Chromium found; pass --browser-path or --devtools-endpoint");
    process_ = std::make_unique<BrowserProcess>(exe);
    endpoint = process_->endpoint();
  }
  try {
    client_ = std::make_unique<CdpClient>(resolve_page_target(endpoint));
    attach();
  } catch (const ProtocolError& e) {
    throw BackendUnavailable(e.what());
  }
}

BrowserEnvironment::~BrowserEnvironment() {
  client_.reset();
  process_.reset();
}

std::chrono::milliseconds BrowserEnvironment::elapsed() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started_);
}

void BrowserEnvironment::attach() {
  client_->call("Page.enable");
  client_->call("Runtime.enable");
  client_->call("Network.enable");
  client_->call("Fetch.enable", {{"patterns", Json::array({{{"urlPattern", "*"}, {"requestStage", "Request"}}})}});
  listeners_attached_ = true;
}

Json BrowserEnvironment::evaluate(const std::string& expression) {
  const Json r = client_->call("Runtime.evaluate", {{"expression", expression}, {"returnByValue", true}});
  if (r.contains("exceptionDetails"))
    throw ProtocolError("evaluate: " + r["exceptionDetails"].value("text", "exception"));
  const Json value = r.value("result", Json::object()).value("value", Json());
  if (!value.is_string()) return value;
  return Json::parse(value.get<std::string>(), nullptr, false);
}

BrowserEnvironment::Snapshot BrowserEnvironment::snapshot() {
  return retry_once([&] {
    const Json j = evaluate(kSnapshotJs);
    if (!j.is_object()) throw ProtocolError("malformed DOM snapshot");
    Snapshot s;
    s.page.url = j.value("url", "");
    s.page.html_doc = j.value("html", "");
    for (const auto& e : j.value("elements", Json::array())) {
      ElementInfo info;
      info.tag = e.value("tag", "");
      const Json attrs = e.value("attributes", Json::object());
      for (const auto& [k, v] : attrs.items())
        info.attributes[k] = v.is_string() ? v.get<std::string>() : v.dump();
      info.rendered = e.value("rendered", false);
      info.visible = e.value("visible", false);
      info.disabled = e.value("disabled", false);
      info.options = e.value("options", std::vector<std::string>{});
      s.elements.push_back(std::move(info));
    }
    return s;
  });
}

void BrowserEnvironment::handle_event(const Json& event, std::size_t step, std::vector<Failure>& failures) {
  const std::string method = event.value("method", "");
  const Json params = event.value("params", Json::object());
  const auto now = Clock::now();

  if (method == "Network.requestWillBeSent") {
    inflight_.push_back(params.value("requestId", ""));
    last_activity_ = now;
  } else if (method == "Network.loadingFinished" || method == "Network.loadingFailed") {
    std::erase(inflight_, params.value("requestId", ""));
    last_activity_ = now;
  } else if (method == "Network.responseReceived") {
    const Json response = params.value("response", Json::object());
    const int status = response.value("status", 0);
    const std::string url = response.value("url", "");
    last_activity_ = now;
    if (auto kind = classify_status(status)) {
      if (*kind == FailureKind::kServerError || !config_.server_errors_only)
        failures.push_back({*kind, "HTTP " + std::to_string(status) + " " + url, status, url, step});
    }
  } else if (method == "Runtime.exceptionThrown") {
    const Json details = params.value("exceptionDetails", Json::object());
    std::string message = details.value("text", "exception");
    if (details.contains("exception")) message = details["exception"].value("description", message);
    failures.push_back({FailureKind::kJsException, message, std::nullopt, details.value("url", page_.url), step});
  } else if (method == "Fetch.requestPaused") {
    const std::string url = params.value("request", Json::object()).value("url", "");
    requested_.push_back(url);
    const auto parsed = parse_url(url);
    const bool web = parsed && (parsed->scheme == "http" || parsed->scheme == "https");
    if (web && is_external(url, scope_host_)) {
      blocked_.push_back(url);
      client_->send("Fetch.failRequest",
                    {{"requestId", params.value("requestId", "")}, {"errorReason", "BlockedByClient"}});
    } else {
      client_->send("Fetch.continueRequest", {{"requestId", params.value("requestId", "")}});
    }
  } else if (method == "Page.javascriptDialogOpening") {
    client_->send("Page.handleJavaScriptDialog", {{"accept", true}});
  } else if (method == "Inspector.detached" || method == "Inspector.targetCrashed") {
    throw BackendUnavailable("browser target went away: " + method);
  }
}

void BrowserEnvironment::settle(std::size_t step, std::vector<Failure>& failures) {
  const auto idle = std::chrono::milliseconds(config_.network_idle_ms);
  const auto cap = Clock::now() + std::chrono::milliseconds(config_.max_wait_ms);
  last_activity_ = Clock::now();
  inflight_.clear();
  while (true) {
    const auto now = Clock::now();
    if (now >= cap) break;
    if (inflight_.empty() && now >= last_activity_ + idle) break;
    const auto wake = inflight_.empty() ? std::min(cap, last_activity_ + idle) : cap;
    if (auto event = client_->next_event(wake)) handle_event(*event, step, failures);
    if (!client_->connected()) throw BackendUnavailable("devtools connection lost");
  }
}

bool BrowserEnvironment::leaves_scope(const std::string& href, const std::string& page_url) const {
  auto base = parse_url(page_url);
  if (!base || base->host.empty()) base = parse_url(config_.entry_url);
  const auto target = base ? resolve_url(*base, href) : std::nullopt;
  if (!target || (target->scheme != "http" && target->scheme != "https")) return false;
  return is_external(target->to_string(), scope_host_);
}

bool BrowserEnvironment::dispatch(const BoundAction& action, std::size_t index) {
  if (!listeners_attached_) throw std::logic_error("dispatch before listeners were attached");
  switch (action.descriptor.kind) {
    case ActionKind::kClick: {
      const Json pt = evaluate(element_js(kRectMarker, index,
                                          "e.scrollIntoView({block: 'center'}); const r = "
                                          "e.getBoundingClientRect(); return JSON.stringify({x: r.left + "
                                          "r.width / 2, y: r.top + r.height / 2});"));
      if (!pt.is_object()) return false;
      const double x = pt.value("x", 0.0), y = pt.value("y", 0.0);
      client_->call("Input.dispatchMouseEvent", {{"type", "mouseMoved"}, {"x", x}, {"y", y}});
      client_->call("Input.dispatchMouseEvent",
                    {{"type", "mousePressed"}, {"x", x}, {"y", y}, {"button", "left"}, {"clickCount", 1}});
      client_->call("Input.dispatchMouseEvent",
                    {{"type", "mouseReleased"}, {"x", x}, {"y", y}, {"button", "left"}, {"clickCount", 1}});
      return true;
    }
    case ActionKind::kFill:
    case ActionKind::kSelect: {
      const std::string value = action.input_value.value_or("");
      if (typed_via_keyboard(action)) {
        const Json ok = evaluate(element_js(
            kFocusMarker, index, "e.focus(); if ('value' in e) e.value = ''; return 'true';"));
        if (ok != Json(true)) return false;
        client_->call("Input.insertText", {{"text", value}});
        evaluate(element_js(kSetValueMarker, index,
                            "e.dispatchEvent(new Event('change', {bubbles: true})); return 'true';"));
        return true;
      }
      const Json ok = evaluate(element_js(
          kSetValueMarker, index,
          "e.focus(); e.value = " + Json(value).dump() +
              "; e.dispatchEvent(new Event('input', {bubbles: true})); "
              "e.dispatchEvent(new Event('change', {bubbles: true})); return 'true';"));
      return ok == Json(true);
    }
    case ActionKind::kNoop:
      return true;
  }
  return false;
}

Page BrowserEnvironment::reset() {
  retry_once([&] { return client_->call("Page.navigate", {{"url", config_.entry_url}}); });
  settle(0, carry_over_);
  auto snap = snapshot();
  page_ = std::move(snap.page);
  elements_ = std::move(snap.elements);
  return page_;
}

ExecuteResult BrowserEnvironment::execute(const Page& current, std::span<const BoundAction> actions) {
  ExecuteResult result;
  result.failures = std::move(carry_over_);
  carry_over_.clear();
  result.page = current;

  for (std::size_t k = 0; k < actions.size(); ++k) {
    const BoundAction& action = actions[k];
    if (!action.descriptor.is_noop()) {
      auto before = snapshot();
      const auto locators = assign_locators(before.page, before.elements);
      const auto it = std::find(locators.begin(), locators.end(), action.descriptor.locator);
      const auto index = static_cast<std::size_t>(it - locators.begin());
      bool ok = it != locators.end();
      if (ok) {
        const auto& e = before.elements[index];
        ok = e.rendered && e.visible && !e.disabled;
        if (ok && e.tag == "a") ok = !leaves_scope(e.attr("href").value_or(""), before.page.url);
      }
      if (ok) ok = retry_once([&] { return dispatch(action, index); });
      if (!ok) {
        result.diverged_at = k;
        page_ = before.page;
        elements_ = std::move(before.elements);
        result.page = page_;
        return result;
      }
    }
    settle(k, result.failures);
    auto after = snapshot();
    page_ = std::move(after.page);
    elements_ = std::move(after.elements);
    result.intermediate.push_back(page_);
    result.page = page_;
  }
  return result;
}

}  // namespace explor
