// Copyright 2026 The unsubx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "unsubx/service.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "unsubx/charts.hpp"
#include "unsubx/filters.hpp"
#include "unsubx/ingest.hpp"
#include "unsubx/json_io.hpp"

namespace unsubx::service {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

long long parse_positive(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used == text.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, name + " must be a positive integer");
}

}  // namespace

Config Config::from_env() {
  Config c;
  if (auto bind = env("UNSUBX_BIND")) {
    auto colon = bind->rfind(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "UNSUBX_BIND must be host:port");
    }
    c.host = bind->substr(0, colon);
    const auto port = bind->substr(colon + 1);
    c.port = port == "0" ? 0 : static_cast<int>(parse_positive("UNSUBX_BIND port", port));
  }
  if (auto v = env("UNSUBX_MAX_UPLOAD_BYTES")) {
    c.max_upload_bytes = static_cast<std::size_t>(parse_positive("UNSUBX_MAX_UPLOAD_BYTES", *v));
  }
  if (auto v = env("UNSUBX_SESSION_TTL")) {
    c.session_ttl = std::chrono::seconds(parse_positive("UNSUBX_SESSION_TTL", *v));
  }
  if (auto v = env("UNSUBX_WEIGHTS")) c.default_weights = parse_weights(*v);
  if (auto v = env("UNSUBX_USAGE_SOURCE")) {
    auto src = parse_usage_source(*v);
    if (!src) throw Error(ErrorCode::kInvalidArgument, "UNSUBX_USAGE_SOURCE must be exported or recomputed");
    c.usage_source = *src;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Sessions
// ---------------------------------------------------------------------------

std::shared_ptr<const Snapshot> make_snapshot(Package pkg, const Weights& weights, UsageSource source) {
  auto snap = std::make_shared<Snapshot>();
  snap->validation = validate_package(pkg).warnings;
  snap->package = settle(std::move(pkg), source, weights);
  snap->metrics = evaluate(snap->package);
  snap->weights = weights;
  snap->usage_source = source;
  return snap;
}

Session::Session(std::string id, std::shared_ptr<const Snapshot> initial, Clock::time_point now)
    : id_(std::move(id)), created_at_(now), snapshot_(std::move(initial)), last_access_(now) {}

Clock::time_point Session::last_access() const {
  std::lock_guard lock(state_mu_);
  return last_access_;
}

void Session::touch(Clock::time_point now) {
  std::lock_guard lock(state_mu_);
  last_access_ = std::max(last_access_, now);
}

std::shared_ptr<const Snapshot> Session::snapshot() const {
  std::lock_guard lock(state_mu_);
  return snapshot_;
}

std::shared_ptr<const Snapshot> Session::set_status(std::string_view key, SubscribedStatus status) {
  std::lock_guard writer(write_mu_);
  auto current = snapshot();
  auto next = std::make_shared<Snapshot>(*current);
  next->package = unsubx::set_status(std::move(next->package), key, status, next->edit_log);
  next->metrics = evaluate(next->package);
  std::shared_ptr<const Snapshot> published = std::move(next);
  {
    std::lock_guard lock(state_mu_);
    snapshot_ = published;
  }
  return published;
}

std::string new_session_id() {
  static thread_local std::random_device device;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  id.reserve(32);
  for (int word = 0; word < 4; ++word) {
    std::uint32_t bits = device();
    for (int nibble = 0; nibble < 8; ++nibble) {
      id.push_back(kHex[bits & 0xF]);
      bits >>= 4;
    }
  }
  return id;
}

std::shared_ptr<Session> SessionStore::create(std::shared_ptr<const Snapshot> initial, Clock::time_point now) {
  std::lock_guard lock(mu_);
  std::string id;
  do {
    id = new_session_id();
  } while (sessions_.count(id));
  auto session = std::make_shared<Session>(id, std::move(initial), now);
  sessions_.emplace(id, session);
  return session;
}

std::shared_ptr<Session> SessionStore::find(std::string_view id, Clock::time_point now) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->touch(now);
  return it->second;
}

std::size_t SessionStore::reap(Clock::time_point now) {
  std::lock_guard lock(mu_);
  std::size_t evicted = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_access() > ttl_) {
      it = sessions_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

// ---------------------------------------------------------------------------
// HTTP
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kJson = "application/json";

// Errors raised by handlers that map straight to a status code.
struct HttpError {
  int status;
  json body;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownKey:
    case ErrorCode::kUnknownChart: return 404;
    default: return 400;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), std::string(kJson));
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const HttpError& e) {
      send_json(res, e.status, e.body);
    } catch (const Error& e) {
      send_json(res, status_for(e.code()), error_json(e));
    } catch (const json::exception& e) {
      send_json(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
  };
}

FilterSpec filter_from(const httplib::Request& req) { return FilterSpec::from_query(req.params); }

std::size_t size_param(const httplib::Request& req, const char* name, std::size_t fallback, std::size_t max) {
  if (!req.has_param(name)) return fallback;
  const auto text = req.get_param_value(name);
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used == text.size() && v >= 0) return std::min<std::size_t>(static_cast<std::size_t>(v), max);
  } catch (const std::exception&) {
  }
  throw HttpError{400, {{"error", "InvalidArgument"}, {"message", std::string(name) + " must be a non-negative integer"}}};
}

json summaries(const Snapshot& snap, const FilterSpec& spec) {
  return {{"package", to_json(summarize(snap.package))},
          {"view", to_json(summarize(apply(snap.package, spec)))}};
}

}  // namespace

struct Server::Impl {
  explicit Impl(Config c) : config(std::move(c)), store(config.session_ttl) {}

  Config config;
  SessionStore store;
  httplib::Server http;
  int bound_port = -1;
  std::thread thread;

  std::mutex reaper_mu;
  std::condition_variable reaper_cv;
  bool stopping = false;
  std::thread reaper;

  std::shared_ptr<Session> session_for(const httplib::Request& req) {
    auto session = store.find(req.matches[1].str());
    if (!session) {
      throw HttpError{404, {{"error", "UnknownSession"}, {"message", "no live session " + req.matches[1].str()}}};
    }
    return session;
  }

  void create_session(const httplib::Request& req, httplib::Response& res) {
    bool use_sample = req.get_param_value("source") == "sample";
    std::optional<std::string> upload;
    if (req.is_multipart_form_data()) {
      if (req.has_file("source") && req.get_file_value("source").content == "sample") use_sample = true;
      if (req.has_file("file")) upload = req.get_file_value("file").content;
    } else if (!req.body.empty()) {
      const auto type = req.get_header_value("Content-Type");
      if (type.rfind("application/json", 0) == 0) {
        auto body = json::parse(req.body);
        if (body.value("source", std::string()) == "sample") use_sample = true;
      } else {
        upload = req.body;
      }
    }
    if (!use_sample && !upload) {
      throw HttpError{400, {{"error", "InvalidArgument"},
                            {"message", "upload a CSV file (multipart field 'file' or text/csv body) or pass source=sample"}}};
    }

    Weights weights = config.default_weights;
    UsageSource source = config.usage_source;
    if (req.has_param("weights")) {
      source = UsageSource::kRecomputed;
      Package probe = use_sample ? load_sample() : parse_export(*upload);
      const auto text = req.get_param_value("weights");
      weights = text == "dynamic" ? dynamic_weights(probe) : parse_weights(text);
    }
    if (req.has_param("usage")) {
      auto parsed = parse_usage_source(req.get_param_value("usage"));
      if (!parsed) throw HttpError{400, {{"error", "InvalidArgument"}, {"message", "usage must be exported or recomputed"}}};
      source = *parsed;
    }

    Package pkg = use_sample ? load_sample() : parse_export(*upload);
    auto session = store.create(make_snapshot(std::move(pkg), weights, source));
    auto snap = session->snapshot();
    send_json(res, 201,
              {{"id", session->id()},
               {"n", snap->package.n()},
               {"warnings", to_json(snap->validation)},
               {"metric_warnings", to_json(snap->metrics.warnings)},
               {"weights", to_json(snap->weights)},
               {"usage_source", snap->usage_source == UsageSource::kRecomputed ? "recomputed" : "exported"},
               {"total_weighted_usage", snap->metrics.total_weighted_usage},
               {"package_if_percent", snap->metrics.package_if_percent},
               {"summary", to_json(summarize(snap->package))}});
  }

  void get_summary(const httplib::Request& req, httplib::Response& res) {
    auto snap = session_for(req)->snapshot();
    send_json(res, 200, summaries(*snap, filter_from(req)));
  }

  void get_journals(const httplib::Request& req, httplib::Response& res) {
    auto snap = session_for(req)->snapshot();
    const View view = apply(snap->package, filter_from(req));
    const std::size_t offset = size_param(req, "offset", 0, view.size());
    const std::size_t limit = size_param(req, "limit", 1000, 10000);
    json page = json::array();
    for (std::size_t i = offset; i < view.size() && i < offset + limit; ++i) {
      const auto row = view.rows[i];
      page.push_back(to_json(snap->package.records[row], snap->metrics.records[row]));
    }
    send_json(res, 200, {{"total", view.size()}, {"offset", offset}, {"limit", limit}, {"journals", page}});
  }

  void patch_journal(const httplib::Request& req, httplib::Response& res) {
    auto session = session_for(req);
    const std::string key = req.matches[2].str();
    const json body = json::parse(req.body.empty() ? std::string("{}") : req.body);
    const json token = body.contains("status") ? body["status"] : body.value("subscribed", json());
    if (!token.is_string()) {
      throw HttpError{422, {{"error", "InvalidStatus"}, {"message", "body must carry \"status\": TRUE|FALSE|MAYBE|BLANK"}}};
    }
    auto status = parse_status(token.get<std::string>());
    if (!status) {
      throw HttpError{422, {{"error", "InvalidStatus"},
                            {"message", "unknown status '" + token.get<std::string>() + "'"}}};
    }
    const FilterSpec spec = filter_from(req);
    const auto before = session->snapshot();
    const auto* rec = before->package.find(key);
    if (rec == nullptr) throw Error(ErrorCode::kUnknownKey, "unknown journal key: " + key);
    const auto previous = rec->subscribed;
    auto snap = session->set_status(key, *status);
    json out = summaries(*snap, spec);
    send_json(res, 200,
              {{"key", key},
               {"previous", status_label(previous)},
               {"status", status_label(*status)},
               {"summary", out}});
  }

  void get_chart(const httplib::Request& req, httplib::Response& res) {
    auto session = session_for(req);
    auto id = parse_chart_id(req.matches[2].str());
    if (!id) throw Error(ErrorCode::kUnknownChart, "unknown chart id: " + req.matches[2].str());
    auto snap = session->snapshot();
    const View view = apply(snap->package, filter_from(req));
    send_json(res, 200, build_chart(view, *id, snap->metrics).to_json());
  }

  void get_export(const httplib::Request& req, httplib::Response& res) {
    auto snap = session_for(req)->snapshot();
    auto file = export_csv(snap->package);
    res.status = 200;
    res.set_header("Content-Disposition", "attachment; filename=\"" + file.filename + "\"");
    res.set_content(std::move(file.bytes), "text/csv; charset=utf-8");
  }

  void get_bounds(const httplib::Request& req, httplib::Response& res) {
    auto snap = session_for(req)->snapshot();
    send_json(res, 200, to_json(slider_bounds(snap->package)));
  }

  void search(const httplib::Request& req, httplib::Response& res) {
    auto snap = session_for(req)->snapshot();
    json out = json::array();
    for (const auto& m : find_journal(snap->package, req.get_param_value("q"))) {
      out.push_back({{"key", m.key}, {"title", m.title}});
    }
    send_json(res, 200, {{"matches", out}});
  }

  void install_routes() {
    http.set_payload_max_length(config.max_upload_bytes);
    const std::string sid = R"(/api/v1/sessions/([A-Za-z0-9]+))";
    http.Post("/api/v1/sessions", guarded([this](auto& q, auto& s) { create_session(q, s); }));
    http.Get(sid + "/summary", guarded([this](auto& q, auto& s) { get_summary(q, s); }));
    http.Get(sid + "/journals", guarded([this](auto& q, auto& s) { get_journals(q, s); }));
    http.Patch(sid + "/journals/([^/]+)", guarded([this](auto& q, auto& s) { patch_journal(q, s); }));
    http.Get(sid + "/charts/([^/]+)", guarded([this](auto& q, auto& s) { get_chart(q, s); }));
    http.Get(sid + "/export", guarded([this](auto& q, auto& s) { get_export(q, s); }));
    http.Get(sid + "/bounds", guarded([this](auto& q, auto& s) { get_bounds(q, s); }));
    http.Get(sid + "/search", guarded([this](auto& q, auto& s) { search(q, s); }));
    http.Get("/api/v1/charts/catalog", guarded([](auto&, auto& s) { send_json(s, 200, catalog_json()); }));
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      const char* name = res.status == 413 ? "PayloadTooLarge" : res.status == 404 ? "NotFound" : "HttpError";
      res.set_content(json{{"error", name}, {"status", res.status}}.dump(), std::string(kJson));
    });
  }

  void start_reaper() {
    reaper = std::thread([this] {
      const auto period = std::clamp<std::chrono::seconds>(config.session_ttl / 4, std::chrono::seconds(1),
                                                           std::chrono::seconds(60));
      std::unique_lock lock(reaper_mu);
      while (!reaper_cv.wait_for(lock, period, [this] { return stopping; })) {
        store.reap(Clock::now());
      }
    });
  }
};

Server::Server(Config config) : impl_(std::make_unique<Impl>(std::move(config))) { impl_->install_routes(); }

Server::~Server() { stop(); }

int Server::bind() {
  auto& c = impl_->config;
  if (c.port == 0) {
    impl_->bound_port = impl_->http.bind_to_any_port(c.host);
  } else {
    impl_->bound_port = impl_->http.bind_to_port(c.host, c.port) ? c.port : -1;
  }
  return impl_->bound_port;
}

bool Server::run() {
  if (!impl_->reaper.joinable()) impl_->start_reaper();
  return impl_->http.listen_after_bind();
}

int Server::start() {
  const int port = bind();
  if (port < 0) return port;
  impl_->start_reaper();
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return port;
}

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  {
    std::lock_guard lock(impl_->reaper_mu);
    impl_->stopping = true;
  }
  impl_->reaper_cv.notify_all();
  if (impl_->reaper.joinable()) impl_->reaper.join();
}

SessionStore& Server::sessions() { return impl_->store; }

const Config& Server::config() const { return impl_->config; }

}  // namespace unsubx::service
