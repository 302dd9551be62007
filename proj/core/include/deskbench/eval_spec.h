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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deskbench/value.h"

namespace deskbench {

enum class CheckType { kInfo, kStates, kDb, kFile, kAnswer, kSignal, kPlaceholder };

const char* ToString(CheckType t);
std::optional<CheckType> ParseCheckType(std::string_view s);

// One evaluation template instance. Field names mirror the serialized form:
// type/key/value/pred/find/cmd/kwargs/path/digest.
struct Check {
  CheckType type = CheckType::kInfo;
  // Literal application query, or a lambda source.
  std::string key;
  Value value;
  // Comparison lambda; strict equality when absent.
  std::optional<std::string> pred;
  // Pair selector over the flattened dump; states checks only.
  std::optional<std::string> find;
  std::string cmd;
  Value kwargs = Map{};
  std::string path;
  std::optional<std::string> digest;
  // Answer checks only.
  bool ignore_case = false;
};

struct EvalSpec {
  std::vector<Check> checks;
};

// Returns the list of problems with `check`; `prefix` is prepended to each
// (e.g. "check 0: "). Lambda sources are parsed here.
std::vector<std::string> ValidateCheck(const Check& check,
                                       const std::string& prefix);

nlohmann::json ToJson(const Check& check);
nlohmann::json ToJson(const EvalSpec& spec);

// Accepts either a bare array of checks or {"checks": [...]}. Schema
// violations are appended to `errors` with `context` as the field path.
EvalSpec EvalSpecFromJson(const nlohmann::json& j, const std::string& context,
                          std::vector<std::string>* errors);

}  // namespace deskbench
