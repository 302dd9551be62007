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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deskbench/model.h"
#include "deskbench/observation.h"

namespace deskbench {

// Failure talking to an environment. status is the HTTP status, or 0 when
// no response arrived.
class EnvError : public std::runtime_error {
 public:
  EnvError(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Wire forms shared by the client and the mock servers.
nlohmann::json ToJson(const GuiCommand& cmd);
GuiCommand GuiCommandFromJson(const nlohmann::json& j);

// {kind, commands | code | seconds | name + args}. Throws std::invalid_argument
// for malformed bodies.
nlohmann::json ActionToWire(const Action& action);
Action ActionFromWire(const nlohmann::json& j);

nlohmann::json ToJson(const ExecResult& r);
ExecResult ExecResultFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const SetupStep& step);
SetupStep SetupStepFromJson(const nlohmann::json& j);

// /setup body. `reset_seed` restores the initial state under that seed
// before the steps run.
nlohmann::json SetupBody(const std::vector<SetupStep>& steps,
                         std::optional<std::uint64_t> reset_seed);

}  // namespace deskbench
