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
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deskbench/eval_spec.h"
#include "deskbench/value.h"

namespace deskbench {

enum class Domain { kAlgebra, kBiochem, kGis, kAtp, kAstronomy, kDoc };
enum class Difficulty { kEasy, kMedium, kHard, kOpen };
enum class Interface { kGui, kCli, kGuiCli };

inline constexpr Domain kAllDomains[] = {Domain::kAlgebra, Domain::kBiochem,
                                         Domain::kGis,     Domain::kAtp,
                                         Domain::kAstronomy, Domain::kDoc};

const char* ToString(Domain d);
const char* ToString(Difficulty d);
const char* ToString(Interface i);
std::optional<Domain> ParseDomain(std::string_view s);
std::optional<Difficulty> ParseDifficulty(std::string_view s);
std::optional<Interface> ParseInterface(std::string_view s);

enum class SetupKind { kSetState, kDownloadFile, kOpenDocument, kCommand };
const char* ToString(SetupKind k);
std::optional<SetupKind> ParseSetupKind(std::string_view s);

struct SetupStep {
  SetupKind kind = SetupKind::kSetState;
  Value payload = Map{};
};

// Checks the fixed payload schema of a setup step.
std::optional<std::string> ValidateSetupStep(const SetupStep& step);

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Fractional coordinate as emitted by grounding models, before scaling.
struct RawPoint {
  double x = 0;
  double y = 0;
};

struct Resolution {
  int width = 1920;
  int height = 1080;
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool Contains(PixelPoint p) const {
    return p.x >= x && p.y >= y && p.x < x + w && p.y < y + h;
  }
  friend bool operator==(const Box&, const Box&) = default;
};

enum class GuiVerb {
  kMoveTo,
  kMoveRel,
  kDragTo,
  kDragRel,
  kClick,
  kRightClick,
  kMiddleClick,
  kDoubleClick,
  kTripleClick,
  kMouseDown,
  kMouseUp,
  kScroll,
  kTypewrite,
  kHotkey,
  kPress,
};
const char* ToString(GuiVerb v);
std::optional<GuiVerb> ParseGuiVerb(std::string_view s);
// Verbs whose point is an absolute screen position.
bool IsCoordinateVerb(GuiVerb v);

enum class MouseButton { kLeft, kMiddle, kRight };
const char* ToString(MouseButton b);
std::optional<MouseButton> ParseMouseButton(std::string_view s);

struct GuiCommand {
  GuiVerb verb = GuiVerb::kClick;
  // Absolute target. Click-family verbs without one act at the cursor.
  std::optional<PixelPoint> point;
  // moveRel / dragRel displacement.
  std::optional<PixelPoint> offset;
  std::optional<MouseButton> button;
  int clicks = 1;
  std::string text;               // typewrite
  std::vector<std::string> keys;  // hotkey / press
  int amount = 0;                 // scroll; positive is up / right
  bool horizontal = false;
  friend bool operator==(const GuiCommand&, const GuiCommand&) = default;
};

enum class ActionKind {
  kGuiScript,
  kCliCode,
  kDone,
  kFail,
  kWait,
  kAnswer,
  kApiCall,
  kNoop,
};
const char* ToString(ActionKind k);
std::optional<ActionKind> ParseActionKind(std::string_view s);

struct Action {
  ActionKind kind = ActionKind::kNoop;
  std::vector<GuiCommand> gui_commands;
  std::string code;
  double wait_seconds = 5;
  std::string answer_text;
  std::string api_name;
  Value api_args = Map{};
  // The unparsed model text.
  std::string raw;
  std::vector<std::string> diagnostics;

  bool IsTerminal() const {
    return kind == ActionKind::kDone || kind == ActionKind::kFail ||
           kind == ActionKind::kAnswer;
  }
};

struct SomEntry {
  Box bbox;
  PixelPoint center;
  std::string name;
  friend bool operator==(const SomEntry&, const SomEntry&) = default;
};

// Tag id (1-based) to annotated element.
using SomMap = std::map<int, SomEntry>;

enum class ObsMode { kScreenshot, kA11y, kHybrid, kSom };
const char* ToString(ObsMode m);
std::optional<ObsMode> ParseObsMode(std::string_view s);

using Bytes = std::vector<std::uint8_t>;

struct Observation {
  ObsMode mode = ObsMode::kA11y;
  std::optional<Bytes> screenshot;
  std::optional<std::string> a11y_text;
  std::optional<SomMap> som_map;
  Resolution resolution;
};

struct ExecResult {
  bool ok = true;
  std::string output;
  std::string diagnostic;
};

enum class Terminal { kDone, kFail, kAnswer, kStepLimit, kSetupError, kParseAbort };
const char* ToString(Terminal t);
std::optional<Terminal> ParseTerminal(std::string_view s);
// Signal name compared by signal checks: DONE, FAIL, ANS, STEP_LIMIT, ...
std::string SignalName(Terminal t);

struct TrajectoryEntry {
  int t = 0;
  Observation observation;
  std::string raw;
  // Planner+grounder steps: the grounder reply, when it was invoked.
  std::optional<std::string> grounder_raw;
  Action action;
  ExecResult result;
};

class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::string task_id) : task_id_(std::move(task_id)) {}

  const std::string& task_id() const { return task_id_; }
  const std::vector<TrajectoryEntry>& entries() const { return entries_; }
  std::optional<Terminal> terminal() const { return terminal_; }
  const std::optional<std::string>& answer_text() const { return answer_; }

  void Append(TrajectoryEntry entry);
  // Throws std::logic_error when called twice.
  void SetTerminal(Terminal t, std::optional<std::string> answer = {});

 private:
  std::string task_id_;
  std::vector<TrajectoryEntry> entries_;
  std::optional<Terminal> terminal_;
  std::optional<std::string> answer_;
};

struct MemoryItem {
  std::string observation_digest;
  std::string action_summary;
};

// Bounded window over the most recent (observation, action) pairs, plus the
// complete textual action history.
class Memory {
 public:
  static constexpr size_t kDefaultWindow = 3;

  explicit Memory(size_t window = kDefaultWindow);

  void Push(MemoryItem item);
  size_t window() const { return window_; }
  const std::deque<MemoryItem>& recent() const { return recent_; }
  // Every action summary ever pushed, oldest first.
  const std::vector<std::string>& history() const { return history_; }

 private:
  size_t window_;
  std::deque<MemoryItem> recent_;
  std::vector<std::string> history_;
};

struct CheckResult {
  size_t index = 0;
  bool pass = false;
  std::string diagnostic;
};

struct Verdict {
  bool success = false;
  std::vector<CheckResult> check_results;

  static Verdict FromChecks(std::vector<CheckResult> results);
  static Verdict Failed(std::string diagnostic);
};

struct AgentConfig {
  // Two-stage planner+grounder episode when set.
  bool planner_grounder = false;
  std::string grounder_profile;
};

struct Task {
  static constexpr int kDefaultMaxSteps = 15;

  std::string id;
  Domain domain = Domain::kAlgebra;
  std::string instruction;
  Difficulty difficulty = Difficulty::kEasy;
  Interface interface = Interface::kGuiCli;
  std::vector<SetupStep> config;
  EvalSpec evaluator;
  int max_steps = kDefaultMaxSteps;
  std::string meta_prompt_id;
  AgentConfig agent;
};

// Empty iff every invariant holds and every evaluator check parses.
std::vector<std::string> ValidateTask(const Task& task);

}  // namespace deskbench
