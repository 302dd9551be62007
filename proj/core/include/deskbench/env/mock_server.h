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

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "deskbench/env/environment.h"
#include "deskbench/env/mock_app.h"

namespace deskbench {

// Serves one MockApp over the wire protocol on a loopback port.
class MockServer {
 public:
  // port 0 binds an ephemeral port.
  explicit MockServer(std::unique_ptr<MockApp> app, std::string host = "127.0.0.1",
                      int port = 0);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  int port() const { return port_; }
  std::string url() const;
  // Blocks the calling thread until Stop().
  void Wait();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string host_;
  int port_ = 0;
  std::thread thread_;
};

// The same protocol without the transport, for tests and benchmarks.
class LocalEnvironment : public Environment {
 public:
  explicit LocalEnvironment(std::unique_ptr<MockApp> app);
  MockApp& app() { return *app_; }

  Value GetState(const std::optional<std::string>& query = std::nullopt) override;
  void PostSetup(const std::vector<SetupStep>& steps,
                 std::optional<std::uint64_t> reset_seed = std::nullopt) override;
  ExecResult ExecAction(const Action& action) override;
  std::string RunCommand(const std::string& cmd, const Value& kwargs) override;
  Bytes GetScreenshot() override;
  A11yNode GetA11y() override;
  Bytes FetchFile(const std::string& path) override;

 private:
  std::mutex mu_;
  std::unique_ptr<MockApp> app_;
};

}  // namespace deskbench
