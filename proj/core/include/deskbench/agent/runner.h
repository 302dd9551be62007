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
#include <string>

#include "deskbench/action_parser.h"
#include "deskbench/agent/policy.h"
#include "deskbench/agent/prompt.h"
#include "deskbench/env/environment.h"
#include "deskbench/eval_engine.h"
#include "deskbench/model.h"
#include "deskbench/observation.h"

namespace deskbench {

struct RunSettings {
  ObsMode obs_mode = ObsMode::kHybrid;
  // Overrides the task's own step budget when set.
  std::optional<int> max_steps;
  int parse_abort_after = 3;
  Resolution resolution;
  size_t memory_window = Memory::kDefaultWindow;
  FilterOptions filter;
  // Built-in prompts when null.
  const MetaPromptRegistry* meta_prompts = nullptr;
  const ValidatorRegistry* validators = nullptr;
  std::uint64_t seed = 0;
};

// Empty iff the settings are usable.
std::vector<std::string> ValidateSettings(const RunSettings& settings);

struct EpisodeResult {
  Trajectory trajectory;
  Verdict verdict;
};

// Observe, prompt, act, parse and execute until a terminal signal, the step
// budget, or parse_abort_after consecutive no-ops; then evaluate. Setup
// failures end the episode as setup_error. Environment failures while
// observing propagate as EnvError.
EpisodeResult RunEpisode(const Task& task, Policy& policy, Environment& env,
                         const RunSettings& settings);

// Two-stage variant: the planner's reply runs directly when it is a special
// code or console code; otherwise the grounder turns it into a GUI action.
EpisodeResult RunPlannerGrounderEpisode(const Task& task, Policy& planner, Policy& grounder,
                                        const GrounderProfile& profile, Environment& env,
                                        const RunSettings& settings);

// Evaluation context backed by an environment and a finished trajectory.
class EnvEvalContext : public EvalContext {
 public:
  EnvEvalContext(Environment& env, const Trajectory& trajectory, Domain domain)
      : env_(env), trajectory_(trajectory), domain_(domain) {}
  Value FullDump() override { return env_.GetState(); }
  Value Query(const std::string& query) override { return env_.GetState(query); }
  std::string RunCommand(const std::string& cmd, const Value& kwargs) override {
    return env_.RunCommand(cmd, kwargs);
  }
  Bytes FetchFile(const std::string& path) override { return env_.FetchFile(path); }
  std::optional<Terminal> terminal() const override { return trajectory_.terminal(); }
  std::optional<std::string> answer() const override { return trajectory_.answer_text(); }
  Domain domain() const override { return domain_; }

 private:
  Environment& env_;
  const Trajectory& trajectory_;
  Domain domain_;
};

// One JSON line per step followed by a summary line. No timestamps, so
// identical episodes give identical bytes.
std::string TrajectoryLog(const Trajectory& trajectory, const Verdict& verdict);

nlohmann::json ToJson(const Verdict& verdict);

}  // namespace deskbench
