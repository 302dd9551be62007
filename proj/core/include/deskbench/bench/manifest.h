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
#include <vector>

#include <nlohmann/json.hpp>

#include "deskbench/agent/prompt.h"
#include "deskbench/model.h"

namespace deskbench {

struct Suite {
  std::string name;
  std::string source_path;
  std::vector<Task> tasks;
  // Built-in prompts plus any the manifest defines.
  MetaPromptRegistry meta_prompts = MetaPromptRegistry::Builtin();
};

// Every problem found while loading, one per entry.
class ManifestError : public std::runtime_error {
 public:
  explicit ManifestError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

nlohmann::json ToJson(const Task& task);
// Appends schema problems to `errors`, each prefixed with `context`.
Task TaskFromJson(const nlohmann::json& j, const std::string& context,
                  std::vector<std::string>* errors);

nlohmann::json ToJson(const Suite& suite);
// Accepts {"name", "meta_prompts", "tasks": [...]} or a bare task array.
// Throws ManifestError; syntax errors carry line and column.
Suite SuiteFromText(const std::string& text, const std::string& source_path = "");
Suite LoadManifest(const std::string& path);

}  // namespace deskbench
