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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deskbench/env/protocol.h"
#include "deskbench/model.h"
#include "deskbench/observation.h"
#include "deskbench/value.h"

namespace deskbench {

// One application instance. All methods throw EnvError on failure.
class Environment {
 public:
  virtual ~Environment() = default;

  // Full dump without a query; the application's answer to `query` otherwise.
  virtual Value GetState(const std::optional<std::string>& query = std::nullopt) = 0;
  virtual void PostSetup(const std::vector<SetupStep>& steps,
                         std::optional<std::uint64_t> reset_seed = std::nullopt) = 0;
  virtual ExecResult ExecAction(const Action& action) = 0;
  virtual std::string RunCommand(const std::string& cmd, const Value& kwargs) = 0;
  virtual Bytes GetScreenshot() = 0;
  virtual A11yNode GetA11y() = 0;
  virtual Bytes FetchFile(const std::string& path) = 0;
};

struct StateSnapshot {
  Value dump;
  std::chrono::steady_clock::time_point fetched_at;
};

StateSnapshot TakeSnapshot(Environment& env);

}  // namespace deskbench
