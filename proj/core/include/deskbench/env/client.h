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

#include "deskbench/env/environment.h"

namespace deskbench {

struct EnvEndpoint {
  std::string base_url;  // http://host:port
  double timeout_seconds = 30;
};

// HTTP client for one application endpoint. Safe to share between threads;
// requests are serialized so at most one is in flight.
class EnvClient : public Environment {
 public:
  explicit EnvClient(EnvEndpoint endpoint);
  ~EnvClient() override;

  const EnvEndpoint& endpoint() const { return endpoint_; }

  Value GetState(const std::optional<std::string>& query = std::nullopt) override;
  void PostSetup(const std::vector<SetupStep>& steps,
                 std::optional<std::uint64_t> reset_seed = std::nullopt) override;
  ExecResult ExecAction(const Action& action) override;
  std::string RunCommand(const std::string& cmd, const Value& kwargs) override;
  Bytes GetScreenshot() override;
  A11yNode GetA11y() override;
  Bytes FetchFile(const std::string& path) override;

 private:
  struct Impl;
  EnvEndpoint endpoint_;
  std::mutex mu_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace deskbench
