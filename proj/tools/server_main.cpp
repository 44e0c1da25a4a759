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
#include <csignal>
#include <cstdio>
#include <exception>

#include "unsubx/service.hpp"

namespace {

unsubx::service::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main() {
  unsubx::service::Config config;
  try {
    config = unsubx::service::Config::from_env();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unsubx-server: %s\n", e.what());
    return 2;
  }

  unsubx::service::Server server(config);
  const int port = server.bind();
  if (port < 0) {
    std::fprintf(stderr, "unsubx-server: cannot bind %s:%d\n", config.host.c_str(), config.port);
    return 1;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::fprintf(stderr, "unsubx-server listening on http://%s:%d/api/v1\n", config.host.c_str(), port);
  const bool ok = server.run();
  g_server = nullptr;
  return ok ? 0 : 1;
}
