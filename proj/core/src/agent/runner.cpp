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

#include "deskbench/agent/runner.h"

#include <functional>

#include "deskbench/digest.h"

namespace deskbench {

namespace {

struct Decision {
  std::string raw;
  std::optional<std::string> grounder_raw;
  Action action;
};

using DecideFn = std::function<Decision(const Observation&, const Memory&, int)>;

Observation Observe(Environment& env, const RunSettings& s) {
  std::optional<Bytes> shot;
  std::optional<A11yNode> tree;
  if (s.obs_mode != ObsMode::kA11y) shot = env.GetScreenshot();
  if (s.obs_mode != ObsMode::kScreenshot) tree = env.GetA11y();
  return ComposeObservation(s.obs_mode, shot, tree, s.resolution, s.filter);
}

Action NoopWith(std::string raw, std::string diagnostic) {
  Action a;
  a.kind = ActionKind::kNoop;
  a.raw = std::move(raw);
  a.diagnostics.push_back(std::move(diagnostic));
  return a;
}

// Retries once; nullopt plus a diagnostic when both attempts fail.
std::optional<std::string> CallPolicy(Policy& policy, const PolicyRequest& req,
                                      std::string* diagnostic) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      return policy.Act(req);
    } catch (const PolicyTransportError& e) {
      *diagnostic = std::string("policy transport error: ") + e.what();
    }
  }
  return std::nullopt;
}

Terminal TerminalFor(ActionKind k) {
  switch (k) {
    case ActionKind::kDone: return Terminal::kDone;
    case ActionKind::kFail: return Terminal::kFail;
    default: return Terminal::kAnswer;
  }
}

const MetaPromptRegistry& Prompts(const RunSettings& s) {
  static const MetaPromptRegistry builtin = MetaPromptRegistry::Builtin();
  return s.meta_prompts ? *s.meta_prompts : builtin;
}

EpisodeResult Loop(const Task& task, Environment& env, const RunSettings& settings,
                   const DecideFn& decide) {
  EpisodeResult out{Trajectory(task.id), {}};
  Trajectory& traj = out.trajectory;
  try {
    env.PostSetup(task.config, settings.seed);
  } catch (const EnvError& e) {
    traj.SetTerminal(Terminal::kSetupError);
    out.verdict = Verdict::Failed(std::string("setup error: ") + e.what());
    return out;
  }

  const int max_steps = settings.max_steps.value_or(task.max_steps);
  Memory memory(settings.memory_window);
  int noops = 0;
  for (int t = 0; t < max_steps; ++t) {
    Observation obs = Observe(env, settings);
    Decision d = decide(obs, memory, t);
    TrajectoryEntry entry{t, obs, d.raw, d.grounder_raw, d.action, {}};
    if (d.action.IsTerminal()) {
      traj.Append(std::move(entry));
      std::optional<std::string> answer;
      if (d.action.kind == ActionKind::kAnswer) answer = d.action.answer_text;
      traj.SetTerminal(TerminalFor(d.action.kind), answer);
      break;
    }
    if (d.action.kind == ActionKind::kNoop) {
      ++noops;
      std::string why = d.action.diagnostics.empty() ? "no action" : d.action.diagnostics.back();
      entry.result = ExecResult{false, "", "no-op: " + why};
    } else {
      noops = 0;
      try {
        entry.result = env.ExecAction(d.action);
      } catch (const EnvError& e) {
        entry.result = ExecResult{false, "", std::string("environment error: ") + e.what()};
      }
    }
    std::string summary = d.raw;
    if (d.grounder_raw) summary += "\n[grounder] " + *d.grounder_raw;
    memory.Push({ObservationDigest(obs), std::move(summary)});
    if (memory.recent().size() > memory.window()) {
      throw std::logic_error("memory window exceeded");
    }
    traj.Append(std::move(entry));
    if (noops >= settings.parse_abort_after) {
      traj.SetTerminal(Terminal::kParseAbort);
      break;
    }
  }
  if (!traj.terminal()) traj.SetTerminal(Terminal::kStepLimit);

  EnvEvalContext ctx(env, traj, task.domain);
  out.verdict = EvaluateTask(task.evaluator, ctx, settings.validators);
  return out;
}

nlohmann::json ObservationJson(const Observation& obs) {
  nlohmann::json j = {{"mode", ToString(obs.mode)}};
  if (obs.screenshot) j["screenshot_sha256"] = Sha256Hex(*obs.screenshot);
  if (obs.a11y_text) j["a11y_text"] = *obs.a11y_text;
  if (obs.som_map) {
    nlohmann::json tags = nlohmann::json::array();
    for (const auto& [tag, e] : *obs.som_map) {
      tags.push_back({{"tag", tag},
                      {"name", e.name},
                      {"bbox", {e.bbox.x, e.bbox.y, e.bbox.w, e.bbox.h}},
                      {"center", {e.center.x, e.center.y}}});
    }
    j["som"] = std::move(tags);
  }
  return j;
}

}  // namespace

std::vector<std::string> ValidateSettings(const RunSettings& s) {
  std::vector<std::string> errors;
  if (s.max_steps && *s.max_steps < 1) errors.push_back("max_steps must be ≥ 1");
  if (s.parse_abort_after < 1) errors.push_back("parse_abort_after must be ≥ 1");
  if (s.memory_window < 1) errors.push_back("memory window must be ≥ 1");
  if (s.resolution.width < 1 || s.resolution.height < 1) {
    errors.push_back("resolution must be positive");
  }
  return errors;
}

EpisodeResult RunEpisode(const Task& task, Policy& policy, Environment& env,
                         const RunSettings& settings) {
  const MetaPromptRegistry& prompts = Prompts(settings);
  policy.BeginEpisode(task, settings.seed);
  return Loop(task, env, settings, [&](const Observation& obs, const Memory& mem, int t) {
    Prompt prompt = BuildPrompt(task, mem, obs, prompts);
    std::string diag;
    std::optional<std::string> raw =
        CallPolicy(policy, {task, PolicyRole::kActor, t, prompt}, &diag);
    if (!raw) return Decision{"", std::nullopt, NoopWith("", diag)};
    const SomMap* som = obs.som_map ? &*obs.som_map : nullptr;
    return Decision{*raw, std::nullopt,
                    ParseModelOutput(*raw, som, task.interface, settings.resolution)};
  });
}

EpisodeResult RunPlannerGrounderEpisode(const Task& task, Policy& planner, Policy& grounder,
                                        const GrounderProfile& profile, Environment& env,
                                        const RunSettings& settings) {
  const MetaPromptRegistry& prompts = Prompts(settings);
  planner.BeginEpisode(task, settings.seed);
  if (&grounder != &planner) grounder.BeginEpisode(task, settings.seed);
  return Loop(task, env, settings, [&](const Observation& obs, const Memory& mem, int t) {
    Prompt prompt = BuildPrompt(task, mem, obs, prompts);
    std::string diag;
    std::optional<std::string> plan =
        CallPolicy(planner, {task, PolicyRole::kPlanner, t, prompt}, &diag);
    if (!plan) return Decision{"", std::nullopt, NoopWith("", diag)};
    const SomMap* som = obs.som_map ? &*obs.som_map : nullptr;
    if (IsDirectPrimitive(*plan)) {
      return Decision{*plan, std::nullopt,
                      ParseModelOutput(*plan, som, task.interface, settings.resolution)};
    }
    if (task.interface == Interface::kCli) {
      return Decision{*plan, std::nullopt,
                      NoopWith(*plan, "GUI grounding is not available on a CLI-only task")};
    }
    Prompt gprompt = BuildGrounderPrompt(task, obs, *plan, profile);
    std::optional<std::string> graw =
        CallPolicy(grounder, {task, PolicyRole::kGrounder, t, gprompt}, &diag);
    if (!graw) return Decision{*plan, std::string(), NoopWith("", diag)};
    Action a = ParseGrounderOutput(*graw, profile, settings.resolution);
    if (a.kind == ActionKind::kCliCode && task.interface == Interface::kGui) {
      a = NoopWith(*graw, "code execution is not available on a GUI-only task");
    }
    return Decision{*plan, *graw, std::move(a)};
  });
}

nlohmann::json ToJson(const Verdict& verdict) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : verdict.check_results) {
    checks.push_back({{"index", r.index}, {"pass", r.pass}, {"diagnostic", r.diagnostic}});
  }
  return {{"success", verdict.success}, {"checks", std::move(checks)}};
}

std::string TrajectoryLog(const Trajectory& trajectory, const Verdict& verdict) {
  std::string out;
  for (const TrajectoryEntry& e : trajectory.entries()) {
    nlohmann::json action = ActionToWire(e.action);
    action["diagnostics"] = e.action.diagnostics;
    nlohmann::json line = {{"t", e.t},
                           {"observation", ObservationJson(e.observation)},
                           {"raw", e.raw},
                           {"action", std::move(action)},
                           {"result", ToJson(e.result)}};
    if (e.grounder_raw) line["grounder_raw"] = *e.grounder_raw;
    out += DumpJson(line) + "\n";
  }
  nlohmann::json summary = ToJson(verdict);
  summary["task_id"] = trajectory.task_id();
  summary["terminal"] = trajectory.terminal() ? ToString(*trajectory.terminal()) : "";
  summary["steps"] = trajectory.entries().size();
  if (trajectory.answer_text()) summary["answer"] = *trajectory.answer_text();
  out += DumpJson(summary) + "\n";
  return out;
}

}  // namespace deskbench
