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

// deskbench: validate, inspect and run task suites.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "deskbench/agent/policy.h"
#include "deskbench/bench/manifest.h"
#include "deskbench/bench/stats.h"
#include "deskbench/bench/suite.h"

namespace {

using namespace deskbench;

struct RunFlags {
  std::string manifest;
  std::string env;
  std::string mock;
  std::string policy;
  std::string model;
  std::string grounder;
  std::string grounder_model;
  std::string obs_mode = "hybrid";
  int max_steps = 0;
  int parallel = 1;
  std::uint64_t seed = 0;
  int seeds = 3;
  std::string out;
  std::string label = "agent";
  std::vector<std::string> validators;
  bool local = false;
};

PolicyFactory MakePolicyFactory(const std::string& spec, const std::string& model) {
  if (spec.rfind("scripted:", 0) == 0) {
    auto script = std::make_shared<nlohmann::json>(ScriptedPolicy::LoadScript(spec.substr(9)));
    ScriptedPolicy check(*script);  // surfaces schema errors before the run
    return [script] { return std::make_unique<ScriptedPolicy>(*script); };
  }
  if (spec.rfind("remote:", 0) == 0) {
    RemotePolicyConfig cfg;
    cfg.url = spec.substr(7);
    cfg.model = model;
    if (cfg.model.empty()) throw ConfigError("--model is required with a remote policy");
    return [cfg] { return std::make_unique<RemotePolicy>(cfg); };
  }
  throw ConfigError("policy must be scripted:FILE or remote:URL, got '" + spec + "'");
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

struct Prepared {
  Suite suite;
  RunSettings settings;
  ValidatorRegistry validators;
  PolicyFactory actor;
  std::optional<PolicyFactory> grounder;
  std::unique_ptr<EnvPool> pool;
  SuiteRunOptions options;
};

std::unique_ptr<Prepared> Prepare(const RunFlags& f) {
  auto p = std::make_unique<Prepared>();
  p->suite = LoadManifest(f.manifest);
  auto mode = ParseObsMode(f.obs_mode);
  if (!mode) throw UsageError("unknown --obs-mode '" + f.obs_mode + "'");
  p->settings.obs_mode = *mode;
  if (f.max_steps != 0) p->settings.max_steps = f.max_steps;
  for (const std::string& v : f.validators) {
    size_t eq = v.find('=');
    auto domain = eq == std::string::npos ? std::nullopt : ParseDomain(v.substr(0, eq));
    if (!domain) throw UsageError("--validator expects DOMAIN=COMMAND, got '" + v + "'");
    p->validators.Register(*domain, CommandValidator(v.substr(eq + 1)));
  }
  p->settings.validators = &p->validators;
  p->actor = MakePolicyFactory(f.policy, f.model);
  if (!f.grounder.empty()) {
    p->grounder = MakePolicyFactory(f.grounder, f.grounder_model.empty() ? f.model : f.grounder_model);
  }
  if (f.parallel < 1) throw UsageError("--parallel must be ≥ 1");
  if (!f.env.empty() && !f.mock.empty()) throw UsageError("--env and --mock are exclusive");
  if (!f.env.empty()) {
    p->pool = std::make_unique<EndpointEnvPool>(SplitComma(f.env));
  } else {
    auto choice = ParseMockChoice(f.mock.empty() ? "auto" : f.mock);
    if (!choice) throw UsageError("--mock must be calc, planetarium or auto");
    p->pool = std::make_unique<MockEnvPool>(static_cast<size_t>(f.parallel), *choice, !f.local);
  }
  p->options.parallel = static_cast<size_t>(f.parallel);
  p->options.seed = f.seed;
  if (!f.out.empty()) p->options.out_dir = f.out;
  return p;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << content;
}

void AddRunFlags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--manifest", f.manifest, "Suite manifest")->required();
  cmd->add_option("--env", f.env, "Environment URLs, comma-separated, one per worker");
  cmd->add_option("--mock", f.mock, "Bundled mock: calc, planetarium or auto");
  cmd->add_flag("--local", f.local, "Drive mocks in-process instead of over HTTP");
  cmd->add_option("--policy", f.policy, "scripted:FILE or remote:URL")->required();
  cmd->add_option("--model", f.model, "Model name for remote policies");
  cmd->add_option("--grounder", f.grounder, "Grounding policy for planner+grounder tasks");
  cmd->add_option("--grounder-model", f.grounder_model, "Model name for a remote grounder");
  cmd->add_option("--obs-mode", f.obs_mode, "screenshot, a11y, hybrid or som");
  cmd->add_option("--max-steps", f.max_steps, "Step budget override");
  cmd->add_option("--parallel", f.parallel, "Parallel workers");
  cmd->add_option("--seed", f.seed, "Run seed");
  cmd->add_option("--out", f.out, "Output directory for logs and reports");
  cmd->add_option("--label", f.label, "Row label in reports");
  cmd->add_option("--validator", f.validators, "DOMAIN=COMMAND external validator");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run and score desktop-agent task suites"};
  app.require_subcommand(1);

  std::string manifest;
  bool json = false;
  auto* validate = app.add_subcommand("validate", "Load a manifest and validate every task");
  validate->add_option("--manifest", manifest, "Suite manifest")->required();

  auto* stats = app.add_subcommand("stats", "Suite composition statistics");
  stats->add_option("--manifest", manifest, "Suite manifest")->required();
  stats->add_flag("--json", json, "Emit JSON");

  RunFlags flags;
  auto* run = app.add_subcommand("run", "Run every task once");
  AddRunFlags(run, flags);

  auto* stability = app.add_subcommand("stability", "Repeat the suite with distinct seeds");
  AddRunFlags(stability, flags);
  stability->add_option("--seeds", flags.seeds, "Number of runs (≥ 2)");

  std::string report_in;
  std::string report_label = "agent";
  auto* report = app.add_subcommand("report", "Render a saved run report as markdown");
  report->add_option("--in", report_in, "report.json written by run")->required();
  report->add_option("--label", report_label, "Row label");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      Suite s = LoadManifest(manifest);
      std::cout << "ok: " << s.tasks.size() << " tasks\n";
    } else if (stats->parsed()) {
      StatsTable t = SuiteStats(LoadManifest(manifest));
      if (json) {
        nlohmann::json j = {{"total", t.total},
                            {"avg_instruction_words", t.avg_instruction_words},
                            {"avg_prompt_words", t.avg_prompt_words}};
        for (const auto& c : t.by_interface) j["interface"][c.label] = c.count;
        for (const auto& c : t.by_difficulty) j["difficulty"][c.label] = c.count;
        for (const auto& c : t.by_domain) j["domain"][c.label] = c.count;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << StatsSummaryLine(t) << "\n\n" << RenderStats(t);
      }
    } else if (run->parsed()) {
      auto p = Prepare(flags);
      RunReport r = RunSuite(p->suite, p->settings, p->actor, p->grounder ? &*p->grounder : nullptr,
                             *p->pool, p->options);
      std::string md = ReportMarkdown(r, flags.label);
      if (p->options.out_dir) {
        WriteFile(std::filesystem::path(flags.out) / "report.json", ToJson(r).dump(2) + "\n");
        WriteFile(std::filesystem::path(flags.out) / "report.md", md);
      }
      std::cout << md;
    } else if (stability->parsed()) {
      auto p = Prepare(flags);
      StabilityReport r = Stability(p->suite, p->settings, p->actor,
                                    p->grounder ? &*p->grounder : nullptr, *p->pool, flags.seeds,
                                    p->options);
      std::string md = StabilityMarkdown(r, flags.label);
      if (p->options.out_dir) WriteFile(std::filesystem::path(flags.out) / "stability.md", md);
      std::cout << md;
    } else if (report->parsed()) {
      std::ifstream in(report_in);
      if (!in) throw ConfigError("cannot read " + report_in);
      auto j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded()) throw ConfigError(report_in + " is not valid JSON");
      std::cout << ReportMarkdown(RunReportFromJson(j), report_label);
    }
  } catch (const ManifestError& e) {
    std::cerr << "manifest errors:\n";
    for (const std::string& p : e.problems()) std::cerr << "  " << p << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
