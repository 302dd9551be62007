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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deskbench/action_parser.h"
#include "deskbench/agent/policy.h"
#include "deskbench/model.h"

namespace deskbench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The closing line of every agent prompt, followed by the instruction.
inline constexpr std::string_view kTaskFrame = "You are asked to complete the following task: ";

// System prompts keyed by id.
class MetaPromptRegistry {
 public:
  // "calc", "planetarium" and "generic".
  static MetaPromptRegistry Builtin();

  void Register(std::string id, std::string text);
  const std::string* Find(std::string_view id) const;
  std::vector<std::string> Ids() const;

 private:
  std::map<std::string, std::string, std::less<>> prompts_;
};

// Text kept in memory for an observation: the a11y text in full, the
// screenshot as a content hash.
std::string ObservationDigest(const Observation& obs);

// System prompt, then memory oldest-first, then the latest observation and
// the task frame as the final line. Throws ConfigError for an unknown
// meta prompt id.
Prompt BuildPrompt(const Task& task, const Memory& memory, const Observation& latest,
                   const MetaPromptRegistry& registry);

// Grounder turn: the latest observation plus the planner's plan.
Prompt BuildGrounderPrompt(const Task& task, const Observation& latest, const std::string& plan,
                           const GrounderProfile& profile);

// Whitespace-delimited word count.
size_t WordCount(std::string_view text);

}  // namespace deskbench
