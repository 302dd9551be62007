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

#include "deskbench/model.h"

#include <stdexcept>
#include <utility>

#include "deskbench/action_parser.h"

namespace deskbench {

namespace {

template <typename E, size_t N>
const char* NameOf(const std::pair<E, const char*> (&table)[N], E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, size_t N>
std::optional<E> ValueOf(const std::pair<E, const char*> (&table)[N],
                         std::string_view s) {
  for (const auto& [e, name] : table) {
    if (s == name) return e;
  }
  return std::nullopt;
}

constexpr std::pair<Domain, const char*> kDomains[] = {
    {Domain::kAlgebra, "algebra"}, {Domain::kBiochem, "biochem"},
    {Domain::kGis, "gis"},         {Domain::kAtp, "atp"},
    {Domain::kAstronomy, "astronomy"}, {Domain::kDoc, "doc"},
};
constexpr std::pair<Difficulty, const char*> kDifficulties[] = {
    {Difficulty::kEasy, "easy"},
    {Difficulty::kMedium, "medium"},
    {Difficulty::kHard, "hard"},
    {Difficulty::kOpen, "open"},
};
constexpr std::pair<Interface, const char*> kInterfaces[] = {
    {Interface::kGui, "gui"},
    {Interface::kCli, "cli"},
    {Interface::kGuiCli, "gui_cli"},
};
constexpr std::pair<SetupKind, const char*> kSetupKinds[] = {
    {SetupKind::kSetState, "set_state"},
    {SetupKind::kDownloadFile, "download_file"},
    {SetupKind::kOpenDocument, "open_document"},
    {SetupKind::kCommand, "command"},
};
constexpr std::pair<GuiVerb, const char*> kVerbs[] = {
    {GuiVerb::kMoveTo, "moveTo"},           {GuiVerb::kMoveRel, "moveRel"},
    {GuiVerb::kDragTo, "dragTo"},           {GuiVerb::kDragRel, "dragRel"},
    {GuiVerb::kClick, "click"},             {GuiVerb::kRightClick, "rightClick"},
    {GuiVerb::kMiddleClick, "middleClick"}, {GuiVerb::kDoubleClick, "doubleClick"},
    {GuiVerb::kTripleClick, "tripleClick"}, {GuiVerb::kMouseDown, "mouseDown"},
    {GuiVerb::kMouseUp, "mouseUp"},         {GuiVerb::kScroll, "scroll"},
    {GuiVerb::kTypewrite, "typewrite"},     {GuiVerb::kHotkey, "hotkey"},
    {GuiVerb::kPress, "press"},
};
constexpr std::pair<MouseButton, const char*> kButtons[] = {
    {MouseButton::kLeft, "left"},
    {MouseButton::kMiddle, "middle"},
    {MouseButton::kRight, "right"},
};
constexpr std::pair<ActionKind, const char*> kActionKinds[] = {
    {ActionKind::kGuiScript, "gui_script"}, {ActionKind::kCliCode, "cli_code"},
    {ActionKind::kDone, "done"},            {ActionKind::kFail, "fail"},
    {ActionKind::kWait, "wait"},            {ActionKind::kAnswer, "answer"},
    {ActionKind::kApiCall, "api_call"},     {ActionKind::kNoop, "noop"},
};
constexpr std::pair<ObsMode, const char*> kObsModes[] = {
    {ObsMode::kScreenshot, "screenshot"},
    {ObsMode::kA11y, "a11y"},
    {ObsMode::kHybrid, "hybrid"},
    {ObsMode::kSom, "som"},
};
constexpr std::pair<Terminal, const char*> kTerminals[] = {
    {Terminal::kDone, "done"},
    {Terminal::kFail, "fail"},
    {Terminal::kAnswer, "answer"},
    {Terminal::kStepLimit, "step_limit"},
    {Terminal::kSetupError, "setup_error"},
    {Terminal::kParseAbort, "parse_abort"},
};

}  // namespace

const char* ToString(Domain d) { return NameOf(kDomains, d); }
const char* ToString(Difficulty d) { return NameOf(kDifficulties, d); }
const char* ToString(Interface i) { return NameOf(kInterfaces, i); }
const char* ToString(SetupKind k) { return NameOf(kSetupKinds, k); }
const char* ToString(GuiVerb v) { return NameOf(kVerbs, v); }
const char* ToString(MouseButton b) { return NameOf(kButtons, b); }
const char* ToString(ActionKind k) { return NameOf(kActionKinds, k); }
const char* ToString(ObsMode m) { return NameOf(kObsModes, m); }
const char* ToString(Terminal t) { return NameOf(kTerminals, t); }

std::optional<Domain> ParseDomain(std::string_view s) {
  return ValueOf(kDomains, s);
}
std::optional<Difficulty> ParseDifficulty(std::string_view s) {
  return ValueOf(kDifficulties, s);
}
std::optional<Interface> ParseInterface(std::string_view s) {
  return ValueOf(kInterfaces, s);
}
std::optional<SetupKind> ParseSetupKind(std::string_view s) {
  return ValueOf(kSetupKinds, s);
}
std::optional<GuiVerb> ParseGuiVerb(std::string_view s) {
  return ValueOf(kVerbs, s);
}
std::optional<MouseButton> ParseMouseButton(std::string_view s) {
  return ValueOf(kButtons, s);
}
std::optional<ActionKind> ParseActionKind(std::string_view s) {
  return ValueOf(kActionKinds, s);
}
std::optional<ObsMode> ParseObsMode(std::string_view s) {
  return ValueOf(kObsModes, s);
}
std::optional<Terminal> ParseTerminal(std::string_view s) {
  return ValueOf(kTerminals, s);
}

bool IsCoordinateVerb(GuiVerb v) {
  switch (v) {
    case GuiVerb::kMoveTo:
    case GuiVerb::kDragTo:
    case GuiVerb::kClick:
    case GuiVerb::kRightClick:
    case GuiVerb::kMiddleClick:
    case GuiVerb::kDoubleClick:
    case GuiVerb::kTripleClick:
    case GuiVerb::kMouseDown:
    case GuiVerb::kMouseUp:
      return true;
    default:
      return false;
  }
}

std::string SignalName(Terminal t) {
  switch (t) {
    case Terminal::kDone:
      return "DONE";
    case Terminal::kFail:
      return "FAIL";
    case Terminal::kAnswer:
      return "ANS";
    case Terminal::kStepLimit:
      return "STEP_LIMIT";
    case Terminal::kSetupError:
      return "SETUP_ERROR";
    case Terminal::kParseAbort:
      return "PARSE_ABORT";
  }
  return "?";
}

std::optional<std::string> ValidateSetupStep(const SetupStep& step) {
  auto need_string = [&](const char* field) -> std::optional<std::string> {
    const Value& v = step.payload[field];
    if (!v.is_string() || v.as_string().empty()) {
      return std::string(ToString(step.kind)) + " payload requires string '" +
             field + "'";
    }
    return std::nullopt;
  };
  if (!step.payload.is_map()) return "payload must be a map";
  switch (step.kind) {
    case SetupKind::kSetState:
      return std::nullopt;
    case SetupKind::kDownloadFile:
      if (auto e = need_string("url")) return e;
      return need_string("path");
    case SetupKind::kOpenDocument:
      return need_string("path");
    case SetupKind::kCommand:
      return need_string("cmd");
  }
  return std::nullopt;
}

void Trajectory::Append(TrajectoryEntry entry) {
  if (terminal_) throw std::logic_error("trajectory already terminated");
  entries_.push_back(std::move(entry));
}

void Trajectory::SetTerminal(Terminal t, std::optional<std::string> answer) {
  if (terminal_) throw std::logic_error("trajectory terminal set twice");
  terminal_ = t;
  answer_ = std::move(answer);
}

Memory::Memory(size_t window) : window_(window) {
  if (window_ == 0) throw std::invalid_argument("memory window must be >= 1");
}

void Memory::Push(MemoryItem item) {
  history_.push_back(item.action_summary);
  recent_.push_back(std::move(item));
  while (recent_.size() > window_) recent_.pop_front();
}

Verdict Verdict::FromChecks(std::vector<CheckResult> results) {
  Verdict v;
  v.success = !results.empty();
  for (const auto& r : results) v.success = v.success && r.pass;
  v.check_results = std::move(results);
  return v;
}

Verdict Verdict::Failed(std::string diagnostic) {
  Verdict v;
  v.success = false;
  v.check_results.push_back({0, false, std::move(diagnostic)});
  return v;
}

std::vector<std::string> ValidateTask(const Task& task) {
  std::vector<std::string> errors;
  if (task.id.empty()) errors.push_back("id must be non-empty");
  if (task.instruction.empty()) {
    errors.push_back("instruction must be non-empty");
  }
  if (task.max_steps < 1) errors.push_back("max_steps must be ≥ 1");
  for (size_t i = 0; i < task.config.size(); ++i) {
    if (auto e = ValidateSetupStep(task.config[i])) {
      errors.push_back("config " + std::to_string(i) + ": " + *e);
    }
  }
  if (task.evaluator.checks.empty()) {
    errors.push_back("evaluator must contain at least one check");
  }
  for (size_t i = 0; i < task.evaluator.checks.size(); ++i) {
    auto check_errors = ValidateCheck(task.evaluator.checks[i],
                                      "check " + std::to_string(i) + ": ");
    errors.insert(errors.end(), check_errors.begin(), check_errors.end());
  }
  if (task.agent.planner_grounder) {
    if (task.agent.grounder_profile.empty()) {
      errors.push_back("planner_grounder agent requires a grounder_profile");
    } else if (!FindGrounderProfile(task.agent.grounder_profile)) {
      errors.push_back("unknown grounder profile '" +
                       task.agent.grounder_profile + "'");
    }
  }
  return errors;
}

}  // namespace deskbench
