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

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "deskbench/eval_spec.h"
#include "deskbench/model.h"
#include "deskbench/value.h"

namespace deskbench {

// What a check may read. Fetch methods throw on environment failure; the
// engine turns that into a failed check.
class EvalContext {
 public:
  virtual ~EvalContext() = default;
  virtual Value FullDump() = 0;
  virtual Value Query(const std::string& query) = 0;
  virtual std::string RunCommand(const std::string& cmd, const Value& kwargs) = 0;
  virtual Bytes FetchFile(const std::string& path) = 0;
  virtual std::optional<Terminal> terminal() const = 0;
  virtual std::optional<std::string> answer() const = 0;
  virtual Domain domain() const = 0;
};

struct ValidatorReport {
  bool success = false;
  std::string diagnostic;
};

using Validator = std::function<ValidatorReport(EvalContext&)>;

// External validators for placeholder checks, keyed by task domain.
class ValidatorRegistry {
 public:
  void Register(Domain domain, Validator validator);
  const Validator* Find(Domain domain) const;

 private:
  std::map<Domain, Validator> validators_;
};

// Runs `command` through the shell with a JSON context document
// ({domain, terminal, answer}) on stdin; success iff it exits with status 0.
Validator CommandValidator(std::string command);

// Flattened (dotted path, value) pairs of every map entry, in pre-order.
std::vector<std::pair<std::string, Value>> FlattenDump(const Value& dump);

// Evaluates a two-argument comparison. Absent pred means strict equality.
// Returns the diagnostic on failure.
std::optional<std::string> Compare(const Value& actual, const Value& expected,
                                   const std::optional<std::string>& pred);

CheckResult RunCheck(const Check& check, size_t index, EvalContext& ctx,
                     const ValidatorRegistry* validators = nullptr);

Verdict EvaluateTask(const EvalSpec& spec, EvalContext& ctx,
                     const ValidatorRegistry* validators = nullptr);

// Fixed in-memory context, for offline evaluation and tests.
class StaticEvalContext : public EvalContext {
 public:
  Value dump = Map{};
  std::map<std::string, Value, std::less<>> queries;
  std::map<std::string, std::string, std::less<>> commands;
  std::map<std::string, Bytes, std::less<>> files;
  std::optional<Terminal> terminal_signal;
  std::optional<std::string> answer_text;
  Domain task_domain = Domain::kAlgebra;

  Value FullDump() override { return dump; }
  Value Query(const std::string& query) override;
  std::string RunCommand(const std::string& cmd, const Value& kwargs) override;
  Bytes FetchFile(const std::string& path) override;
  std::optional<Terminal> terminal() const override { return terminal_signal; }
  std::optional<std::string> answer() const override { return answer_text; }
  Domain domain() const override { return task_domain; }
};

}  // namespace deskbench
