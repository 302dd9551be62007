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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "deskbench/agent/policy.h"
#include "deskbench/bench/manifest.h"
#include "deskbench/bench/stats.h"
#include "deskbench/bench/suite.h"

namespace deskbench {
namespace {

std::string DataPath(const std::string& name) { return std::string(DESKBENCH_TEST_DATA_DIR) + "/" + name; }

std::vector<std::string> ManifestProblems(const std::string& text) {
  try {
    SuiteFromText(text);
  } catch (const ManifestError& e) {
    return e.problems();
  }
  return {};
}

PolicyFactory ScriptFactory(const nlohmann::json& script) {
  return [script] { return std::make_unique<ScriptedPolicy>(script); };
}

nlohmann::json OracleScript() { return ScriptedPolicy::LoadScript(DataPath("oracle_script.json")); }

const char* kOneTask = R"j({"tasks": [{"id": "t", "domain": "doc", "instruction": "Do it.",
  "difficulty": "hard", "interface": "cli", "evaluator": [{"type": "signal", "value": "DONE"}]}]})j";

TEST(Manifest, MockSuiteLoads) {
  Suite s = LoadManifest(DataPath("mock_suite.json"));
  EXPECT_EQ(s.name, "mock-12");
  EXPECT_EQ(s.tasks.size(), 12u);
  Suite again = SuiteFromText(ToJson(s).dump());
  EXPECT_EQ(ToJson(again), ToJson(s));
}

TEST(Manifest, DefaultsApply) {
  Suite s = SuiteFromText(kOneTask);
  ASSERT_EQ(s.tasks.size(), 1u);
  EXPECT_EQ(s.tasks[0].max_steps, Task::kDefaultMaxSteps);
  EXPECT_EQ(s.tasks[0].meta_prompt_id, "generic");
  EXPECT_FALSE(s.tasks[0].agent.planner_grounder);
}

TEST(Manifest, DuplicateId) {
  nlohmann::json doc = nlohmann::json::parse(kOneTask);
  doc["tasks"].push_back(doc["tasks"][0]);
  std::vector<std::string> p = ManifestProblems(doc.dump());
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], "tasks[1] (id 't'): duplicate id 't' (first at tasks[0])");
}

TEST(Manifest, MissingEvaluator) {
  nlohmann::json doc = nlohmann::json::parse(kOneTask);
  doc["tasks"][0].erase("evaluator");
  std::vector<std::string> p = ManifestProblems(doc.dump());
  ASSERT_FALSE(p.empty());
  EXPECT_NE(p[0].find("evaluator"), std::string::npos) << p[0];
}

TEST(Manifest, SyntaxErrorHasLineAndColumn) {
  std::vector<std::string> p = ManifestProblems("{\n  \"tasks\": [\n    {,\n  ]\n}");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].rfind("line 3, column 6: ", 0), 0u) << p[0];
}

TEST(Manifest, CollectsEveryProblem) {
  nlohmann::json doc = nlohmann::json::parse(kOneTask);
  doc["extra"] = 1;
  doc["tasks"][0]["max_steps"] = 0;
  doc["tasks"][0]["domain"] = "cooking";
  doc["tasks"][0]["meta_prompt_id"] = "who";
  EXPECT_EQ(ManifestProblems(doc.dump()).size(), 4u);
  EXPECT_THROW(LoadManifest("/nonexistent/suite.json"), ManifestError);
}

TEST(Stats, CompositionFixture) {
  StatsTable t = SuiteStats(LoadManifest(DataPath("composition_169.json")));
  EXPECT_EQ(t.total, 169u);
  EXPECT_EQ(StatsSummaryLine(t),
            "GUI 38 (22.5%) · CLI 33 (19.5%) · GUI+CLI 98 (58.0%) · Easy 91 (53.8%) · "
            "Medium 48 (28.4%) · Hard 28 (16.6%) · Open 2 (1.2%)");
  size_t domains = 0;
  for (const auto& c : t.by_domain) domains += c.count;
  EXPECT_EQ(domains, 169u);
}

TEST(Stats, EmptyAndSingle) {
  Suite empty = SuiteFromText(R"({"tasks": []})");
  StatsTable e = SuiteStats(empty);
  EXPECT_EQ(e.total, 0u);
  EXPECT_EQ(e.avg_instruction_words, 0);
  EXPECT_NE(StatsSummaryLine(e).find("GUI 0 (0.0%)"), std::string::npos);
  StatsTable one = SuiteStats(SuiteFromText(kOneTask));
  EXPECT_NE(StatsSummaryLine(one).find("CLI 1 (100.0%)"), std::string::npos);
  EXPECT_NE(StatsSummaryLine(one).find("Hard 1 (100.0%)"), std::string::npos);
  EXPECT_EQ(one.avg_instruction_words, 2);
  EXPECT_GT(one.avg_prompt_words, one.avg_instruction_words);
}

TEST(Stats, FormatPercentMatchesIntegerRounding) {
  EXPECT_EQ(FormatPercent(0, 0), "0.0%");
  EXPECT_EQ(FormatPercent(1, 3), "33.3%");
  EXPECT_EQ(FormatPercent(2, 3), "66.7%");
  EXPECT_EQ(FormatPercent(1, 16), "6.3%");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    size_t total = 1 + rng() % 500;
    size_t count = rng() % (total + 1);
    size_t tenths = (2000 * count + total) / (2 * total);
    std::string ref = std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
    ASSERT_EQ(FormatPercent(count, total), ref) << count << "/" << total;
  }
}

Suite WithoutSignalChecks(Suite s) {
  std::erase_if(s.tasks, [](const Task& t) {
    for (const auto& c : t.evaluator.checks) {
      if (c.type == CheckType::kSignal) return true;
    }
    return false;
  });
  return s;
}

TEST(RunSuite, ImmediateFailScoresZero) {
  Suite s = WithoutSignalChecks(LoadManifest(DataPath("mock_suite.json")));
  ASSERT_EQ(s.tasks.size(), 11u);
  MockEnvPool pool(1, MockChoice::kAuto, false);
  RunReport r = RunSuite(s, {}, ScriptFactory(nlohmann::json::parse(R"({"default": ["```FAIL```"]})")),
                         nullptr, pool, {});
  EXPECT_EQ(r.Overall().successes, 0u);
  for (const TaskOutcome& t : r.tasks) {
    EXPECT_EQ(t.terminal, "fail");
    EXPECT_EQ(t.steps, 1u);
  }
}

TEST(RunSuite, HalfScriptedScoresHalf) {
  Suite s = LoadManifest(DataPath("mock_suite.json"));
  nlohmann::json script = OracleScript();
  std::map<Domain, int> spoiled;
  for (const Task& t : s.tasks) {
    if (spoiled[t.domain] < 3 && t.id != "calc-divide-by-zero") {
      script["tasks"][t.id] = {"I will think about it."};
      ++spoiled[t.domain];
    }
  }
  MockEnvPool pool(1, MockChoice::kAuto, false);
  RunReport r = RunSuite(s, {}, ScriptFactory(script), nullptr, pool, {});
  EXPECT_EQ(r.Overall().successes, 6u);
  EXPECT_EQ(r.Overall().percent(), 50.0);
  for (const auto& [d, rate] : r.ByDomain()) EXPECT_EQ(rate.successes, 3u) << ToString(d);
  EXPECT_NE(ReportMarkdown(r).find("| Agent | Algebra | Astronomy | Overall |"), std::string::npos);
  EXPECT_NE(ReportMarkdown(r).find("| 50.0% | 50.0% | 50.0% |"), std::string::npos);
}

TEST(RunSuite, ParallelMatchesSequential) {
  Suite s = LoadManifest(DataPath("mock_suite.json"));
  MockEnvPool seq_pool(1, MockChoice::kAuto, false);
  MockEnvPool par_pool(3, MockChoice::kAuto, false);
  RunReport a = RunSuite(s, {}, ScriptFactory(OracleScript()), nullptr, seq_pool, {1, 7});
  RunReport b = RunSuite(s, {}, ScriptFactory(OracleScript()), nullptr, par_pool, {3, 7});
  ASSERT_EQ(a.tasks.size(), b.tasks.size());
  for (size_t i = 0; i < a.tasks.size(); ++i) {
    EXPECT_EQ(a.tasks[i].id, s.tasks[i].id);
    EXPECT_EQ(b.tasks[i].id, s.tasks[i].id);
    EXPECT_EQ(a.tasks[i].success, b.tasks[i].success);
    EXPECT_EQ(a.tasks[i].steps, b.tasks[i].steps);
    EXPECT_EQ(a.tasks[i].seed, b.tasks[i].seed);
  }
  EXPECT_EQ(a.Overall().successes, 12u);
}

TEST(RunSuite, AggregatesAreConsistent) {
  Suite s = LoadManifest(DataPath("mock_suite.json"));
  MockEnvPool pool(1, MockChoice::kAuto, false);
  nlohmann::json script = OracleScript();
  script["tasks"]["sky-travel-earth"] = {"no"};
  RunReport r = RunSuite(s, {}, ScriptFactory(script), nullptr, pool, {});
  auto sum = [](const auto& groups) {
    Rate out;
    for (const auto& [_, rate] : groups) {
      out.successes += rate.successes;
      out.total += rate.total;
    }
    return out;
  };
  for (const Rate& g : {sum(r.ByDomain()), sum(r.ByDifficulty()), sum(r.ByInterface())}) {
    EXPECT_EQ(g.successes, r.Overall().successes);
    EXPECT_EQ(g.total, r.Overall().total);
  }
  RunReport back = RunReportFromJson(ToJson(r));
  EXPECT_EQ(ToJson(back), ToJson(r));
}

TEST(RunSuite, WritesTrajectoryLogs) {
  Suite s = LoadManifest(DataPath("mock_suite.json"));
  s.tasks.resize(2);
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "deskbench_bench_test_logs";
  std::filesystem::remove_all(dir);
  MockEnvPool pool(1, MockChoice::kAuto, false);
  RunSuite(s, {}, ScriptFactory(OracleScript()), nullptr, pool, {1, 0, dir.string()});
  for (const Task& t : s.tasks) {
    std::ifstream in(dir / "trajectories" / (t.id + ".jsonl"));
    std::string line, last;
    while (std::getline(in, line)) last = line;
    EXPECT_EQ(nlohmann::json::parse(last)["task_id"], t.id);
  }
  std::filesystem::remove_all(dir);
}

TEST(RunSuite, UnservableDomainIsRecordedError) {
  Suite s = SuiteFromText(kOneTask);
  MockEnvPool pool(1, MockChoice::kAuto, false);
  RunReport r = RunSuite(s, {}, ScriptFactory(OracleScript()), nullptr, pool, {});
  EXPECT_FALSE(r.tasks[0].success);
  EXPECT_FALSE(r.tasks[0].error.empty());
  EXPECT_NE(ReportMarkdown(r).find("error: "), std::string::npos);
}

TEST(Stability, NeedsTwoRuns) {
  Suite s = SuiteFromText(kOneTask);
  MockEnvPool pool(1, MockChoice::kAuto, false);
  try {
    Stability(s, {}, ScriptFactory(OracleScript()), nullptr, pool, 1, {});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_STREQ(e.what(), "n_runs must be ≥ 2");
  }
}

TEST(Stability, ScriptedPolicyHasNoSpread) {
  Suite s = LoadManifest(DataPath("mock_suite.json"));
  MockEnvPool pool(1, MockChoice::kAuto, false);
  StabilityReport r = Stability(s, {}, ScriptFactory(OracleScript()), nullptr, pool, 3, {1, 10});
  EXPECT_EQ(r.seeds, (std::vector<std::uint64_t>{10, 11, 12}));
  EXPECT_EQ(r.overall.mean, 100.0);
  EXPECT_EQ(r.overall.stddev, 0.0);
  for (const auto& [d, spread] : r.by_domain) EXPECT_EQ(spread.stddev, 0.0);
  EXPECT_NE(StabilityMarkdown(r).find("100.0 ± 0.0"), std::string::npos) << StabilityMarkdown(r);
}

// Succeeds with probability `bias` per episode, decided by the episode seed.
class CoinPolicy : public Policy {
 public:
  CoinPolicy(double bias, nlohmann::json oracle) : bias_(bias), oracle_(std::move(oracle)) {}
  void BeginEpisode(const Task& task, std::uint64_t seed) override {
    std::mt19937_64 rng(seed);
    heads_ = std::uniform_real_distribution<double>(0, 1)(rng) < bias_;
    oracle_.BeginEpisode(task, seed);
  }
  std::string Act(const PolicyRequest& req) override {
    return heads_ ? oracle_.Act(req) : "```FAIL```";
  }

 private:
  double bias_;
  ScriptedPolicy oracle_;
  bool heads_ = false;
};

TEST(Stability, CoinPolicyMeanTracksBias) {
  Suite s = WithoutSignalChecks(LoadManifest(DataPath("mock_suite.json")));
  MockEnvPool pool(1, MockChoice::kAuto, false);
  nlohmann::json oracle = OracleScript();
  PolicyFactory coin = [oracle] { return std::make_unique<CoinPolicy>(0.5, oracle); };
  RunSettings settings;
  settings.obs_mode = ObsMode::kA11y;
  StabilityReport r = Stability(s, settings, coin, nullptr, pool, 12, {1, 100});
  // 132 episodes; three standard errors is about 13 points.
  EXPECT_NEAR(r.overall.mean, 50.0, 13.1);
  EXPECT_GT(r.overall.stddev, 0.0);
  std::vector<double> per_run;
  for (const RunReport& run : r.runs) per_run.push_back(run.Overall().percent());
  DomainSpread ref = Spread(per_run);
  EXPECT_DOUBLE_EQ(ref.mean, r.overall.mean);
}

TEST(Stability, SpreadIsSampleStddev) {
  DomainSpread s = Spread({2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(32.0 / 7.0));
  EXPECT_EQ(Spread({3}).stddev, 0.0);
}

}  // namespace
}  // namespace deskbench
