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
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deskbench/agent/runner.h"
#include "deskbench/bench/manifest.h"
#include "deskbench/env/client.h"
#include "deskbench/env/mock_server.h"

namespace deskbench {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environments owned by batch workers. Worker w only ever touches its own
// slot, so For() needs no locking across workers.
class EnvPool {
 public:
  virtual ~EnvPool() = default;
  virtual size_t workers() const = 0;
  // Throws ConfigError when no environment can serve the task.
  virtual Environment& For(size_t worker, const Task& task) = 0;
};

enum class MockChoice { kCalc, kPlanetarium, kAuto };
std::optional<MockChoice> ParseMockChoice(std::string_view s);

// Bundled mocks, one instance per worker and application. kAuto picks the
// calculator for algebra tasks and the planetarium for astronomy tasks.
class MockEnvPool : public EnvPool {
 public:
  MockEnvPool(size_t workers, MockChoice choice, bool over_http = true,
              Resolution resolution = {});
  ~MockEnvPool() override;
  size_t workers() const override { return slots_.size(); }
  Environment& For(size_t worker, const Task& task) override;

 private:
  struct Slot {
    std::map<std::string, std::unique_ptr<MockServer>> servers;
    std::map<std::string, std::unique_ptr<Environment>> envs;
  };
  MockChoice choice_;
  bool over_http_;
  Resolution resolution_;
  std::vector<Slot> slots_;
};

// One remote endpoint per worker.
class EndpointEnvPool : public EnvPool {
 public:
  explicit EndpointEnvPool(const std::vector<std::string>& urls, double timeout_seconds = 30);
  size_t workers() const override { return clients_.size(); }
  Environment& For(size_t worker, const Task& task) override;

 private:
  std::vector<std::unique_ptr<EnvClient>> clients_;
};

struct TaskOutcome {
  std::string id;
  Domain domain = Domain::kAlgebra;
  Difficulty difficulty = Difficulty::kEasy;
  Interface interface = Interface::kGuiCli;
  bool success = false;
  size_t steps = 0;
  double wall_ms = 0;
  std::string terminal;
  std::uint64_t seed = 0;
  Verdict verdict;
  std::string error;  // set when the episode could not run
};

struct Rate {
  size_t successes = 0;
  size_t total = 0;
  double percent() const { return total == 0 ? 0 : 100.0 * successes / total; }
};

struct RunReport {
  std::string suite;
  std::uint64_t run_seed = 0;
  std::vector<TaskOutcome> tasks;  // suite order

  Rate Overall() const;
  std::map<Domain, Rate> ByDomain() const;
  std::map<Difficulty, Rate> ByDifficulty() const;
  std::map<Interface, Rate> ByInterface() const;
};

nlohmann::json ToJson(const RunReport& report);
RunReport RunReportFromJson(const nlohmann::json& j);

struct SuiteRunOptions {
  size_t parallel = 1;
  std::uint64_t seed = 0;
  // Trajectory logs go to <out_dir>/trajectories/<task id>.jsonl.
  std::optional<std::string> out_dir;
};

// Runs every task; per-task failures are recorded in the report. `grounder`
// serves the grounding stage of planner+grounder tasks; the actor factory is
// used when it is null.
RunReport RunSuite(const Suite& suite, const RunSettings& settings, const PolicyFactory& actor,
                   const PolicyFactory* grounder, EnvPool& pool, const SuiteRunOptions& options);

struct DomainSpread {
  double mean = 0;
  double stddev = 0;  // sample standard deviation, percentage points
};

struct StabilityReport {
  std::vector<std::uint64_t> seeds;
  std::vector<RunReport> runs;
  std::map<Domain, DomainSpread> by_domain;
  DomainSpread overall;
};

// n_runs suite runs with seeds options.seed, options.seed + 1, ...
// Throws UsageError("n_runs must be ≥ 2") for fewer than two runs.
StabilityReport Stability(const Suite& suite, const RunSettings& settings,
                          const PolicyFactory& actor, const PolicyFactory* grounder,
                          EnvPool& pool, int n_runs, const SuiteRunOptions& options);

// Per-domain columns in fixed order with empty domains omitted, then overall.
std::string ReportMarkdown(const RunReport& report, const std::string& label = "agent");
std::string StabilityMarkdown(const StabilityReport& report, const std::string& label = "agent");

DomainSpread Spread(const std::vector<double>& values);

}  // namespace deskbench
