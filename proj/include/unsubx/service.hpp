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
#pragma once

// Session-scoped HTTP API (/api/v1).
//
//   POST  /api/v1/sessions                          upload CSV or ?source=sample
//   GET   /api/v1/sessions/{id}/summary             whole-package and filtered summaries
//   GET   /api/v1/sessions/{id}/journals            filtered, paged records
//   PATCH /api/v1/sessions/{id}/journals/{key}      {"status": "FALSE"}
//   GET   /api/v1/sessions/{id}/charts/{chart_id}   chart document over the filtered view
//   GET   /api/v1/sessions/{id}/export              CSV attachment, random file name
//   GET   /api/v1/sessions/{id}/bounds              slider extents
//   GET   /api/v1/sessions/{id}/search?q=           title search
//   GET   /api/v1/charts/catalog
//
// Filters are query parameters (price_min, price_max, ..., statuses=TRUE,MAYBE)
// and are never stored server-side. Sessions live in memory only.

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "unsubx/decisions.hpp"
#include "unsubx/metrics.hpp"
#include "unsubx/types.hpp"

namespace unsubx::service {

using Clock = std::chrono::steady_clock;

struct Config {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_upload_bytes = 50u * 1024u * 1024u;
  std::chrono::seconds session_ttl{2 * 60 * 60};
  Weights default_weights;
  UsageSource usage_source = UsageSource::kExported;

  /// Overrides from UNSUBX_BIND (host:port), UNSUBX_MAX_UPLOAD_BYTES,
  /// UNSUBX_SESSION_TTL (seconds), UNSUBX_WEIGHTS (d,c,a) and
  /// UNSUBX_USAGE_SOURCE (exported|recomputed).
  /// Throws Error(kInvalidArgument) on a malformed value.
  static Config from_env();
};

/// Immutable state of one session after an edit. Package numerics are
/// settled (see settle()) and metrics are always computed from it.
struct Snapshot {
  Package package;
  PackageMetrics metrics;
  Weights weights;
  UsageSource usage_source = UsageSource::kExported;
  EditLog edit_log;
  std::vector<Warning> validation;
};

/// Settles `pkg`, computes metrics and validation.
std::shared_ptr<const Snapshot> make_snapshot(Package pkg, const Weights& weights, UsageSource source);

class Session {
 public:
  Session(std::string id, std::shared_ptr<const Snapshot> initial, Clock::time_point now);

  const std::string& id() const noexcept { return id_; }
  Clock::time_point created_at() const noexcept { return created_at_; }
  Clock::time_point last_access() const;
  void touch(Clock::time_point now);

  /// Latest snapshot; safe to read concurrently with writers.
  std::shared_ptr<const Snapshot> snapshot() const;

  /// Single-writer: edits to one session are serialized. Returns the new
  /// snapshot. Throws Error(kUnknownKey).
  std::shared_ptr<const Snapshot> set_status(std::string_view key, SubscribedStatus status);

 private:
  const std::string id_;
  const Clock::time_point created_at_;
  std::mutex write_mu_;
  mutable std::mutex state_mu_;
  std::shared_ptr<const Snapshot> snapshot_;
  Clock::time_point last_access_;
};

class SessionStore {
 public:
  explicit SessionStore(std::chrono::seconds ttl) : ttl_(ttl) {}

  std::shared_ptr<Session> create(std::shared_ptr<const Snapshot> initial, Clock::time_point now = Clock::now());
  /// Looks up and touches a live session; nullptr if unknown.
  std::shared_ptr<Session> find(std::string_view id, Clock::time_point now = Clock::now());
  /// Evicts sessions idle for longer than the TTL. Returns the count.
  std::size_t reap(Clock::time_point now);
  std::size_t size() const;
  std::chrono::seconds ttl() const noexcept { return ttl_; }

 private:
  std::chrono::seconds ttl_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>, std::less<>> sessions_;
};

/// 128 random bits as 32 lowercase hex characters.
std::string new_session_id();

class Server {
 public:
  explicit Server(Config config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds config.host:config.port (port 0 picks a free one). Returns the
  /// bound port, or -1 on failure.
  int bind();
  /// Serves until stop(); call after bind().
  bool run();
  /// bind() + run() on a background thread. Returns the port or -1.
  int start();
  void stop();

  SessionStore& sessions();
  const Config& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace unsubx::service
