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

#include "deskbench/bench/suite.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "deskbench/bench/stats.h"
#include "deskbench/digest.h"

namespace deskbench {

namespace {

std::string SafeFileName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
      c = '_';
    }
  }
  return out.empty() ? "_" : out;
}

const char* DomainHeader(Domain d) {
  switch (d) {
    case Domain::kAlgebra: return "Algebra";
    case Domain::kBiochem: return "Biochem";
    case Domain::kGis: return "GIS";
    case Domain::kAtp: return "ATP";
    case Domain::kAstronomy: return "Astronomy";
    case Domain::kDoc: return "Doc";
  }
  return "";
}

TaskOutcome RunOne(const Suite& suite, const Task& task, const RunSettings& base,
                   Policy& actor, Policy& grounder, EnvPool& pool, size_t worker,
                   const SuiteRunOptions& options) {
  TaskOutcome o;
  o.id = task.id;
  o.domain = task.domain;
  o.difficulty = task.difficulty;
  o.interface = task.interface;
  o.seed = TaskSeed(options.seed, task.id);
  RunSettings s = base;
  s.seed = o.seed;
  if (s.meta_prompts == nullptr) s.meta_prompts = &suite.meta_prompts;

  auto start = std::chrono::steady_clock::now();
  std::string log;
  try {
    Environment& env = pool.For(worker, task);
    EpisodeResult r;
    if (task.agent.planner_grounder) {
      const GrounderProfile* profile = FindGrounderProfile(task.agent.grounder_profile);
      if (profile == nullptr) {
        throw ConfigError("unknown grounder profile '" + task.agent.grounder_profile + "'");
      }
      r = RunPlannerGrounderEpisode(task, actor, grounder, *profile, env, s);
    } else {
      r = RunEpisode(task, actor, env, s);
    }
    o.success = r.verdict.success;
    o.steps = r.trajectory.entries().size();
    o.terminal = r.trajectory.terminal() ? ToString(*r.trajectory.terminal()) : "";
    o.verdict = r.verdict;
    log = TrajectoryLog(r.trajectory, r.verdict);
  } catch (const std::exception& e) {
    o.error = e.what();
    o.verdict = Verdict::Failed(e.what());
    nlohmann::json summary = ToJson(o.verdict);
    summary["task_id"] = task.id;
    summary["error"] = o.error;
    log = DumpJson(summary) + "\n";
  }
  o.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  if (options.out_dir) {
    std::filesystem::path dir = std::filesystem::path(*options.out_dir) / "trajectories";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / (SafeFileName(task.id) + ".jsonl"), std::ios::binary) << log;
  }
  return o;
}

template <typename Key, typename KeyFn>
std::map<Key, Rate> GroupRates(const std::vector<TaskOutcome>& tasks, KeyFn key) {
  std::map<Key, Rate> out;
  for (const TaskOutcome& t : tasks) {
    Rate& r = out[key(t)];
    ++r.total;
    if (t.success) ++r.successes;
  }
  return out;
}

template <typename Enum, typename ParseFn>
Enum ParseOr(const nlohmann::json& j, const char* field, ParseFn parse) {
  auto v = parse(j.at(field).get<std::string>());
  if (!v) throw std::invalid_argument(std::string("bad ") + field + " in report");
  return *v;
}

}  // namespace

std::optional<MockChoice> ParseMockChoice(std::string_view s) {
  if (s == "calc") return MockChoice::kCalc;
  if (s == "planetarium") return MockChoice::kPlanetarium;
  if (s == "auto") return MockChoice::kAuto;
  return std::nullopt;
}

MockEnvPool::MockEnvPool(size_t workers, MockChoice choice, bool over_http, Resolution resolution)
    : choice_(choice), over_http_(over_http), resolution_(resolution),
      slots_(std::max<size_t>(1, workers)) {}

MockEnvPool::~MockEnvPool() = default;

Environment& MockEnvPool::For(size_t worker, const Task& task) {
  std::string kind;
  switch (choice_) {
    case MockChoice::kCalc: kind = "calc"; break;
    case MockChoice::kPlanetarium: kind = "planetarium"; break;
    case MockChoice::kAuto:
      if (task.domain == Domain::kAlgebra) {
        kind = "calc";
      } else if (task.domain == Domain::kAstronomy) {
        kind = "planetarium";
      } else {
        throw ConfigError(std::string("no bundled mock for domain ") + ToString(task.domain));
      }
      break;
  }
  Slot& slot = slots_.at(worker);
  auto it = slot.envs.find(kind);
  if (it != slot.envs.end()) return *it->second;
  std::unique_ptr<Environment> env;
  if (over_http_) {
    auto server = std::make_unique<MockServer>(MakeMockApp(kind, resolution_));
    env = std::make_unique<EnvClient>(EnvEndpoint{server->url()});
    slot.servers[kind] = std::move(server);
  } else {
    env = std::make_unique<LocalEnvironment>(MakeMockApp(kind, resolution_));
  }
  return *(slot.envs[kind] = std::move(env));
}

EndpointEnvPool::EndpointEnvPool(const std::vector<std::string>& urls, double timeout_seconds) {
  for (const std::string& u : urls) {
    clients_.push_back(std::make_unique<EnvClient>(EnvEndpoint{u, timeout_seconds}));
  }
  if (clients_.empty()) throw ConfigError("at least one environment URL is required");
}

Environment& EndpointEnvPool::For(size_t worker, const Task&) { return *clients_.at(worker); }

Rate RunReport::Overall() const {
  Rate r;
  for (const TaskOutcome& t : tasks) {
    ++r.total;
    if (t.success) ++r.successes;
  }
  return r;
}

std::map<Domain, Rate> RunReport::ByDomain() const {
  return GroupRates<Domain>(tasks, [](const TaskOutcome& t) { return t.domain; });
}

std::map<Difficulty, Rate> RunReport::ByDifficulty() const {
  return GroupRates<Difficulty>(tasks, [](const TaskOutcome& t) { return t.difficulty; });
}

std::map<Interface, Rate> RunReport::ByInterface() const {
  return GroupRates<Interface>(tasks, [](const TaskOutcome& t) { return t.interface; });
}

nlohmann::json ToJson(const RunReport& report) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const TaskOutcome& t : report.tasks) {
    tasks.push_back({{"id", t.id},
                     {"domain", ToString(t.domain)},
                     {"difficulty", ToString(t.difficulty)},
                     {"interface", ToString(t.interface)},
                     {"success", t.success},
                     {"steps", t.steps},
                     {"wall_ms", t.wall_ms},
                     {"terminal", t.terminal},
                     {"seed", t.seed},
                     {"error", t.error},
                     {"verdict", ToJson(t.verdict)}});
  }
  Rate overall = report.Overall();
  return {{"suite", report.suite},
          {"run_seed", report.run_seed},
          {"successes", overall.successes},
          {"total", overall.total},
          {"tasks", std::move(tasks)}};
}

RunReport RunReportFromJson(const nlohmann::json& j) {
  RunReport r;
  r.suite = j.value("suite", "");
  r.run_seed = j.value("run_seed", std::uint64_t{0});
  for (const auto& t : j.at("tasks")) {
    TaskOutcome o;
    o.id = t.at("id").get<std::string>();
    o.domain = ParseOr<Domain>(t, "domain", ParseDomain);
    o.difficulty = ParseOr<Difficulty>(t, "difficulty", ParseDifficulty);
    o.interface = ParseOr<Interface>(t, "interface", ParseInterface);
    o.success = t.at("success").get<bool>();
    o.steps = t.value("steps", size_t{0});
    o.wall_ms = t.value("wall_ms", 0.0);
    o.terminal = t.value("terminal", "");
    o.seed = t.value("seed", std::uint64_t{0});
    o.error = t.value("error", "");
    if (t.contains("verdict")) {
      const auto& v = t["verdict"];
      o.verdict.success = v.value("success", false);
      for (const auto& c : v.value("checks", nlohmann::json::array())) {
        o.verdict.check_results.push_back(
            {c.value("index", size_t{0}), c.value("pass", false), c.value("diagnostic", "")});
      }
    }
    r.tasks.push_back(std::move(o));
  }
  return r;
}

RunReport RunSuite(const Suite& suite, const RunSettings& settings, const PolicyFactory& actor,
                   const PolicyFactory* grounder, EnvPool& pool, const SuiteRunOptions& options) {
  if (auto errs = ValidateSettings(settings); !errs.empty()) throw UsageError(errs.front());
  RunReport report;
  report.suite = suite.name;
  report.run_seed = options.seed;
  report.tasks.resize(suite.tasks.size());

  const size_t n_workers =
      std::max<size_t>(1, std::min({options.parallel, pool.workers(), suite.tasks.size()}));
  std::atomic<size_t> next{0};
  auto work = [&](size_t w) {
    std::unique_ptr<Policy> a = actor();
    std::unique_ptr<Policy> g = grounder ? (*grounder)() : actor();
    for (size_t i = next++; i < suite.tasks.size(); i = next++) {
      report.tasks[i] = RunOne(suite, suite.tasks[i], settings, *a, *g, pool, w, options);
    }
  };
  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < n_workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  return report;
}

DomainSpread Spread(const std::vector<double>& values) {
  DomainSpread s;
  if (values.empty()) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (values.size() - 1));
  }
  return s;
}

StabilityReport Stability(const Suite& suite, const RunSettings& settings,
                          const PolicyFactory& actor, const PolicyFactory* grounder,
                          EnvPool& pool, int n_runs, const SuiteRunOptions& options) {
  if (n_runs < 2) throw UsageError("n_runs must be ≥ 2");
  StabilityReport out;
  std::map<Domain, std::vector<double>> per_domain;
  std::vector<double> overall;
  for (int r = 0; r < n_runs; ++r) {
    SuiteRunOptions opts = options;
    opts.seed = options.seed + static_cast<std::uint64_t>(r);
    if (options.out_dir) {
      opts.out_dir = (std::filesystem::path(*options.out_dir) / ("run-" + std::to_string(r))).string();
    }
    RunReport rep = RunSuite(suite, settings, actor, grounder, pool, opts);
    for (const auto& [d, rate] : rep.ByDomain()) per_domain[d].push_back(rate.percent());
    overall.push_back(rep.Overall().percent());
    out.seeds.push_back(opts.seed);
    out.runs.push_back(std::move(rep));
  }
  for (const auto& [d, values] : per_domain) out.by_domain[d] = Spread(values);
  out.overall = Spread(overall);
  return out;
}

std::string ReportMarkdown(const RunReport& report, const std::string& label) {
  std::map<Domain, Rate> by_domain = report.ByDomain();
  std::string header = "| Agent |";
  std::string rule = "| --- |";
  std::string row = "| " + label + " |";
  for (Domain d : kAllDomains) {
    auto it = by_domain.find(d);
    if (it == by_domain.end()) continue;
    header += std::string(" ") + DomainHeader(d) + " |";
    rule += " ---: |";
    row += " " + FormatPercent(it->second.successes, it->second.total) + " |";
  }
  Rate overall = report.Overall();
  header += " Overall |";
  rule += " ---: |";
  row += " " + FormatPercent(overall.successes, overall.total) + " |";

  std::string out = "## Success rate\n\n" + header + "\n" + rule + "\n" + row + "\n\n";
  out += "Successes: " + std::to_string(overall.successes) + " / " +
         std::to_string(overall.total) + ", run seed " + std::to_string(report.run_seed) + "\n\n";

  out += "| Task | Domain | Result | Steps | Terminal |\n| --- | --- | --- | ---: | --- |\n";
  for (const TaskOutcome& t : report.tasks) {
    std::string terminal = t.error.empty() ? t.terminal : "error: " + t.error;
    out += "| " + t.id + " | " + ToString(t.domain) + " | " + (t.success ? "pass" : "fail") +
           " | " + std::to_string(t.steps) + " | " + terminal + " |\n";
  }
  return out;
}

std::string StabilityMarkdown(const StabilityReport& report, const std::string& label) {
  std::string header = "| Agent |";
  std::string rule = "| --- |";
  std::string row = "| " + label + " |";
  auto cell = [](const DomainSpread& s) {
    return FormatOneDecimal(s.mean) + " ± " + FormatOneDecimal(s.stddev);
  };
  for (Domain d : kAllDomains) {
    auto it = report.by_domain.find(d);
    if (it == report.by_domain.end()) continue;
    header += std::string(" ") + DomainHeader(d) + " |";
    rule += " ---: |";
    row += " " + cell(it->second) + " |";
  }
  header += " Overall |";
  rule += " ---: |";
  row += " " + cell(report.overall) + " |";
  std::string seeds;
  for (std::uint64_t s : report.seeds) seeds += (seeds.empty() ? "" : ", ") + std::to_string(s);
  return "## Success rate over " + std::to_string(report.runs.size()) +
         " runs (mean ± sample std, %)\n\n" + header + "\n" + rule + "\n" + row +
         "\n\nSeeds: " + seeds + "\n";
}

}  // namespace deskbench
