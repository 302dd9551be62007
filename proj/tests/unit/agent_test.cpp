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

#include <random>

#include "deskbench/agent/policy.h"
#include "deskbench/agent/prompt.h"
#include "deskbench/agent/runner.h"
#include "deskbench/bench/manifest.h"
#include "deskbench/env/mock_server.h"

namespace deskbench {
namespace {

const Suite& MockSuite() {
  static const Suite suite = LoadManifest(std::string(DESKBENCH_TEST_DATA_DIR) + "/mock_suite.json");
  return suite;
}

const Task& TaskById(const std::string& id) {
  for (const Task& t : MockSuite().tasks) {
    if (t.id == id) return t;
  }
  throw std::runtime_error("no task " + id);
}

// Replies in order, the last one repeating; records every prompt it sees.
class RecordingPolicy : public Policy {
 public:
  explicit RecordingPolicy(std::vector<std::string> replies, int failures = 0)
      : replies_(std::move(replies)), failures_(failures) {}
  std::string Act(const PolicyRequest& req) override {
    prompts.push_back(req.prompt);
    if (failures_ > 0) {
      --failures_;
      throw PolicyTransportError("connection reset");
    }
    size_t i = std::min(calls++, replies_.size() - 1);
    return replies_[i];
  }
  std::vector<Prompt> prompts;
  size_t calls = 0;

 private:
  std::vector<std::string> replies_;
  int failures_;
};

LocalEnvironment EnvFor(const Task& task) {
  return LocalEnvironment(MakeMockApp(task.meta_prompt_id == "calc" ? "calc" : "planetarium"));
}

TEST(RunEpisode, KeypadProductSucceeds) {
  const Task& task = TaskById("calc-keypad-product");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy policy({"```python\npyautogui.click(633, 419)\npyautogui.click(1044, 527)\n"
                          "pyautogui.click(907, 527)\npyautogui.click(907, 743)\n```",
                          "```DONE```"});
  EpisodeResult r = RunEpisode(task, policy, env, {});
  EXPECT_TRUE(r.verdict.success);
  EXPECT_EQ(r.trajectory.terminal(), Terminal::kDone);
  ASSERT_EQ(r.trajectory.entries().size(), 2u);
  EXPECT_EQ(r.trajectory.entries()[0].action.gui_commands.size(), 4u);
}

TEST(RunEpisode, AnswerIsRecorded) {
  const Task& task = TaskById("calc-answer-quotient");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy policy({"```ANS 128```"});
  EpisodeResult r = RunEpisode(task, policy, env, {});
  EXPECT_EQ(r.trajectory.terminal(), Terminal::kAnswer);
  EXPECT_EQ(r.trajectory.answer_text(), "128");
  EXPECT_TRUE(r.verdict.success);
}

TEST(RunEpisode, StepLimit) {
  const Task& task = TaskById("calc-eval-console");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy policy({"```WAIT 1```"});
  RunSettings s;
  s.max_steps = 2;
  EpisodeResult r = RunEpisode(task, policy, env, s);
  EXPECT_EQ(r.trajectory.terminal(), Terminal::kStepLimit);
  EXPECT_EQ(r.trajectory.entries().size(), 2u);
  EXPECT_FALSE(r.verdict.success);
}

TEST(RunEpisode, ParseAbortAfterConsecutiveNoops) {
  const Task& task = TaskById("calc-eval-console");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy policy({"thinking", "```WAIT 1```", "hmm", "still thinking", "no idea"});
  EpisodeResult r = RunEpisode(task, policy, env, {});
  EXPECT_EQ(r.trajectory.terminal(), Terminal::kParseAbort);
  ASSERT_EQ(r.trajectory.entries().size(), 5u);
  EXPECT_EQ(r.trajectory.entries()[0].result.diagnostic.rfind("no-op: ", 0), 0u);
}

TEST(RunEpisode, SetupErrorEndsEpisode) {
  Task task = TaskById("calc-eval-console");
  task.config = {{SetupKind::kOpenDocument, Value(Map{{"path", Value("/nope.txt")}})}};
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy policy({"```DONE```"});
  EpisodeResult r = RunEpisode(task, policy, env, {});
  EXPECT_EQ(r.trajectory.terminal(), Terminal::kSetupError);
  EXPECT_TRUE(r.trajectory.entries().empty());
  EXPECT_FALSE(r.verdict.success);
  EXPECT_EQ(policy.calls, 0u);
}

TEST(RunEpisode, TransportErrorRetriedOnce) {
  const Task& task = TaskById("calc-eval-console");
  {
    LocalEnvironment env = EnvFor(task);
    RecordingPolicy policy({"```DONE```"}, 1);
    EpisodeResult r = RunEpisode(task, policy, env, {});
    EXPECT_EQ(r.trajectory.terminal(), Terminal::kDone);
    EXPECT_EQ(r.trajectory.entries().size(), 1u);
  }
  {
    LocalEnvironment env = EnvFor(task);
    RecordingPolicy policy({"```DONE```"}, 2);
    EpisodeResult r = RunEpisode(task, policy, env, {});
    ASSERT_GE(r.trajectory.entries().size(), 1u);
    const TrajectoryEntry& e = r.trajectory.entries()[0];
    EXPECT_EQ(e.action.kind, ActionKind::kNoop);
    EXPECT_NE(e.result.diagnostic.find("policy transport error: connection reset"), std::string::npos);
    EXPECT_EQ(r.trajectory.terminal(), Terminal::kDone);
  }
}

TEST(BuildPrompt, FramesTaskOnLastLine) {
  const Task& task = TaskById("sky-set-julian-date");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy policy({"```DONE```"});
  RunEpisode(task, policy, env, {});
  ASSERT_EQ(policy.prompts.size(), 1u);
  const Prompt& p = policy.prompts[0];
  EXPECT_EQ(p.front().role, "system");
  EXPECT_EQ(p.front().JoinedText(), *MetaPromptRegistry::Builtin().Find("planetarium"));
  std::string last = p.back().JoinedText();
  std::string line = last.substr(last.rfind('\n') + 1);
  EXPECT_EQ(line, std::string(kTaskFrame) + task.instruction);
}

TEST(BuildPrompt, MemoryWindowAfterFiveSteps) {
  const Task& task = TaskById("calc-eval-console");
  LocalEnvironment env = EnvFor(task);
  std::vector<std::string> replies;
  for (int i = 0; i < 5; ++i) replies.push_back("step " + std::to_string(i) + "\n```WAIT 1```");
  replies.push_back("```DONE```");
  RecordingPolicy policy(replies);
  RunSettings s;
  s.max_steps = 6;
  RunEpisode(task, policy, env, s);
  ASSERT_EQ(policy.prompts.size(), 6u);
  const Prompt& p = policy.prompts[5];
  ASSERT_EQ(p.size(), 1u + 1u + 2u * Memory::kDefaultWindow + 1u);
  std::string older = p[1].JoinedText();
  EXPECT_NE(older.find("[0] " + replies[0]), std::string::npos);
  EXPECT_NE(older.find("[1] " + replies[1]), std::string::npos);
  EXPECT_EQ(older.find(replies[2]), std::string::npos);
  for (size_t k = 0; k < Memory::kDefaultWindow; ++k) {
    EXPECT_EQ(p[2 + 2 * k].role, "user");
    EXPECT_EQ(p[3 + 2 * k].role, "assistant");
    EXPECT_EQ(p[3 + 2 * k].JoinedText(), replies[2 + k]);
  }
}

TEST(BuildPrompt, ModesCarryTheRightParts) {
  const Task& task = TaskById("calc-keypad-product");
  for (ObsMode mode : {ObsMode::kScreenshot, ObsMode::kA11y, ObsMode::kHybrid, ObsMode::kSom}) {
    LocalEnvironment env = EnvFor(task);
    RecordingPolicy policy({"```DONE```"});
    RunSettings s;
    s.obs_mode = mode;
    RunEpisode(task, policy, env, s);
    const ChatMessage& last = policy.prompts.at(0).back();
    bool has_image = last.parts.size() > 1 && last.parts[1].kind == ContentPart::Kind::kImage;
    std::string text = last.JoinedText();
    EXPECT_EQ(has_image, mode != ObsMode::kA11y);
    EXPECT_EQ(text.find("Accessibility tree") != std::string::npos, mode != ObsMode::kScreenshot);
    EXPECT_EQ(text.find("Numbered tags") != std::string::npos, mode == ObsMode::kSom);
  }
}

TEST(BuildPrompt, UnknownMetaPrompt) {
  Task task = TaskById("calc-eval-console");
  task.meta_prompt_id = "nonexistent";
  EXPECT_THROW(BuildPrompt(task, Memory(), Observation{}, MetaPromptRegistry::Builtin()), ConfigError);
}

TEST(WordCount, Whitespace) {
  EXPECT_EQ(WordCount(""), 0u);
  EXPECT_EQ(WordCount("  a b\tc\n\nd "), 4u);
}

TEST(PlannerGrounder, GrounderTurnsPlanIntoClick) {
  const Task& task = TaskById("sky-labels-grounded");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy planner({"Click the Labels button in the toolbar.", "```DONE```"});
  RecordingPolicy grounder({"CLICK <point>[[344, 74]]</point>"});
  EpisodeResult r = RunPlannerGrounderEpisode(task, planner, grounder,
                                              *FindGrounderProfile("os-atlas"), env, {});
  EXPECT_TRUE(r.verdict.success);
  EXPECT_EQ(grounder.calls, 1u);
  ASSERT_EQ(r.trajectory.entries().size(), 2u);
  EXPECT_EQ(r.trajectory.entries()[0].grounder_raw, "CLICK <point>[[344, 74]]</point>");
  EXPECT_EQ(r.trajectory.entries()[0].action.gui_commands.at(0).point, (PixelPoint{660, 80}));
  std::string gtext = grounder.prompts[0].back().JoinedText();
  EXPECT_EQ(gtext.rfind("Plan:\nClick the Labels button in the toolbar.", 0), 0u);
}

TEST(PlannerGrounder, DirectPrimitivesSkipGrounder) {
  const Task& task = TaskById("sky-labels-grounded");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy planner({"```labels on```", "```DONE```"});
  RecordingPolicy grounder({"CLICK <point>[[1, 1]]</point>"});
  EpisodeResult r = RunPlannerGrounderEpisode(task, planner, grounder,
                                              *FindGrounderProfile("os-atlas"), env, {});
  EXPECT_EQ(grounder.calls, 0u);
  EXPECT_EQ(r.trajectory.terminal(), Terminal::kDone);
}

TEST(PlannerGrounder, NoGroundingOnConsoleTask) {
  const Task& task = TaskById("calc-eval-console");
  LocalEnvironment env = EnvFor(task);
  RecordingPolicy planner({"Press the seven key.", "```DONE```"});
  RecordingPolicy grounder({"CLICK <point>[[1, 1]]</point>"});
  EpisodeResult r = RunPlannerGrounderEpisode(task, planner, grounder,
                                              *FindGrounderProfile("os-atlas"), env, {});
  EXPECT_EQ(grounder.calls, 0u);
  ASSERT_EQ(r.trajectory.entries().size(), 2u);
  EXPECT_EQ(r.trajectory.entries()[0].action.kind, ActionKind::kNoop);
}

TEST(Trajectory, InvariantsOverRandomScripts) {
  static const std::vector<std::string> kPool = {
      "```DONE```", "```FAIL```", "```WAIT 1```", "```ANS 4```", "prose", "```eval 1+2```",
      "```python\npyautogui.click(633, 419)\n```", "```API compute {\"expr\": \"2*2\"}```",
      "```python\npyautogui.write('5+5')\npyautogui.press('enter')\n```", "click(",
      "```python\npyautogui.click(tag_2)\n```"};
  std::mt19937_64 rng(2024);
  const Task& base = TaskById("calc-typed-expression");
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::string> replies;
    for (int i = 0; i < 8; ++i) replies.push_back(kPool[rng() % kPool.size()]);
    Task task = base;
    task.interface = static_cast<Interface>(rng() % 3);
    RunSettings s;
    s.max_steps = 1 + static_cast<int>(rng() % 7);
    s.obs_mode = rng() % 2 ? ObsMode::kSom : ObsMode::kA11y;
    auto run = [&] {
      LocalEnvironment env = EnvFor(task);
      RecordingPolicy policy(replies);
      EpisodeResult r = RunEpisode(task, policy, env, s);
      return std::make_pair(r, TrajectoryLog(r.trajectory, r.verdict));
    };
    auto [r, log] = run();
    const auto& entries = r.trajectory.entries();
    ASSERT_TRUE(r.trajectory.terminal());
    EXPECT_LE(entries.size(), static_cast<size_t>(*s.max_steps));
    for (size_t i = 0; i < entries.size(); ++i) {
      EXPECT_EQ(entries[i].t, static_cast<int>(i));
      if (i + 1 < entries.size()) EXPECT_FALSE(entries[i].action.IsTerminal());
    }
    Terminal term = *r.trajectory.terminal();
    if (term == Terminal::kDone || term == Terminal::kFail || term == Terminal::kAnswer) {
      ASSERT_FALSE(entries.empty());
      EXPECT_TRUE(entries.back().action.IsTerminal());
    }
    if (term == Terminal::kStepLimit) EXPECT_EQ(entries.size(), static_cast<size_t>(*s.max_steps));
    if (term == Terminal::kParseAbort) {
      ASSERT_GE(entries.size(), 3u);
      for (size_t i = entries.size() - 3; i < entries.size(); ++i) {
        EXPECT_EQ(entries[i].action.kind, ActionKind::kNoop);
      }
    }
    EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), static_cast<long>(entries.size() + 1));
    EXPECT_EQ(run().second, log);
  }
}

TEST(ScriptedPolicy, RepliesPerRoleAndRepeatLast) {
  ScriptedPolicy p(nlohmann::json::parse(R"({"default": ["d"],
      "tasks": {"a": ["a0", "a1"], "b": {"planner": ["p0"], "grounder": ["g0"]}}})"));
  Task a;
  a.id = "a";
  Task b;
  b.id = "b";
  Task c;
  c.id = "c";
  Prompt empty;
  p.BeginEpisode(a, 0);
  EXPECT_EQ(p.Act({a, PolicyRole::kActor, 0, empty}), "a0");
  EXPECT_EQ(p.Act({a, PolicyRole::kActor, 1, empty}), "a1");
  EXPECT_EQ(p.Act({a, PolicyRole::kActor, 2, empty}), "a1");
  p.BeginEpisode(b, 0);
  EXPECT_EQ(p.Act({b, PolicyRole::kPlanner, 0, empty}), "p0");
  EXPECT_EQ(p.Act({b, PolicyRole::kGrounder, 0, empty}), "g0");
  p.BeginEpisode(c, 0);
  EXPECT_EQ(p.Act({c, PolicyRole::kActor, 0, empty}), "d");
  EXPECT_THROW(ScriptedPolicy(nlohmann::json::parse(R"({"tasks": {"a": [1]}})")), std::runtime_error);
  EXPECT_THROW(ScriptedPolicy::LoadScript("/nonexistent/script.json"), std::runtime_error);
}

TEST(RemotePolicy, RequestBodyDefaults) {
  RemotePolicy p({"http://127.0.0.1:9/v1/chat/completions", "test-model"});
  Prompt prompt = {ChatMessage::Text("system", "sys")};
  ChatMessage user = ChatMessage::Text("user", "look");
  user.parts.push_back({ContentPart::Kind::kImage, "", Bytes{'a', 'b', 'c'}});
  prompt.push_back(user);
  nlohmann::json body = p.RequestBody(prompt);
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["temperature"], 0.5);
  EXPECT_EQ(body["top_p"], 0.9);
  EXPECT_EQ(body["max_tokens"], 1500);
  EXPECT_EQ(body["messages"][0]["content"], "sys");
  EXPECT_EQ(body["messages"][1]["content"][1]["image_url"]["url"], "data:image/png;base64,YWJj");
}

TEST(RemotePolicy, UnreachableIsTransportError) {
  RemotePolicyConfig cfg{"http://127.0.0.1:9/v1/chat/completions", "m"};
  cfg.timeout_seconds = 1;
  RemotePolicy p(cfg);
  Task t;
  Prompt empty;
  EXPECT_THROW(p.Act({t, PolicyRole::kActor, 0, empty}), PolicyTransportError);
}

TEST(ValidateSettings, Problems) {
  EXPECT_TRUE(ValidateSettings({}).empty());
  RunSettings s;
  s.max_steps = 0;
  s.parse_abort_after = 0;
  EXPECT_EQ(ValidateSettings(s).size(), 2u);
  EXPECT_EQ(ValidateSettings(s)[0], "max_steps must be ≥ 1");
}

}  // namespace
}  // namespace deskbench
