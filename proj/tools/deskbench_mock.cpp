// Copyright 2026 The Deskbench Authors
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

// deskbench-mock: serve a bundled mock application over the wire protocol.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include "deskbench/env/mock_server.h"

namespace {

std::atomic<bool> g_stop{false};

void OnSignal(int) { g_stop = true; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serve a bundled mock application"};
  std::string kind = "planetarium";
  std::string host = "127.0.0.1";
  int port = 0;
  std::uint64_t seed = 0;
  app.add_option("--app", kind, "calc or planetarium");
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port (0 picks a free one)");
  app.add_option("--seed", seed, "Initial seed");
  CLI11_PARSE(app, argc, argv);

  auto mock = deskbench::MakeMockApp(kind);
  if (!mock) {
    std::cerr << "error: unknown app '" << kind << "'\n";
    return 2;
  }
  mock->Reset(seed);
  try {
    deskbench::MockServer server(std::move(mock), host, port);
    std::cout << server.url() << std::endl;
    std::signal(SIGINT, OnSignal);
    std::signal(SIGTERM, OnSignal);
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.Stop();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
