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

#include "deskbench/agent/prompt.h"

#include <cctype>

#include "deskbench/digest.h"

namespace deskbench {

namespace {

constexpr std::string_view kActionGuide = R"(Each reply may contain free-form reasoning followed by exactly one fenced block that says what to do next.

Available blocks:
- A GUI script using pyautogui calls, for example
  ```python
  pyautogui.click(640, 410)
  pyautogui.typewrite("2451545")
  pyautogui.press("enter")
  ```
  When elements carry numbered tags, tag_<n> stands for the centre of element n.
- A command for the application's own console, for example
  ```
  eval 1 + 2
  ```
- ```WAIT``` or ```WAIT n``` to let n seconds pass (5 when omitted).
- ```DONE``` once the goal is reached.
- ```FAIL``` when the goal cannot be reached in this application.
- ```ANS your answer``` to submit an answer to a question.
- ```API name {"arg": value}``` to call a registered application API.

Only the first block is executed. Replies without a block count as no-ops, and several in a row end the attempt.)";

constexpr std::string_view kCalcPrompt = R"(You operate MiniCalc, a desktop calculator.
The window shows an expression entry, a result display, a keypad and a history list.
Console commands: eval <expression>, let <name> = <expression>, clear, history, export <path>.
Registered APIs: compute {"expr": string}, clear.)";

constexpr std::string_view kPlanetariumPrompt = R"(You operate MiniPlanetarium, a desktop sky simulator with a Julian-date clock.
The toolbar has -day, +day, Now, Go to, Labels, a Julian date entry and a status line; the left panel selects objects.
Console commands: settime <jd>, time, select <object>, goto [object], show <object>, hide <object>, labels on|off, label <object> on|off, rate <days per second>, fov <degrees>.
Registered APIs: set_time {"jd": number}, goto {"target": name}, select {"target": name}.)";

constexpr std::string_view kGenericPrompt = R"(You operate a scientific desktop application through its graphical interface and its command console.)";

std::string GrounderGuide(const GrounderProfile& profile) {
  std::string scale = profile.scale == CoordinateScale::kUnit
                          ? "fractions of the screen in [0, 1]"
                          : "thousandths of the screen in [0, 1000]";
  switch (profile.dialect) {
    case GrounderDialect::kPointTag:
      return "Translate the plan into one low-level action on the screenshot. Reply with one of:\n"
             "CLICK <point>[[x, y]]</point>\nTYPE [text]\nSCROLL [UP|DOWN|LEFT|RIGHT]\n"
             "Coordinates are " + scale + ".";
    case GrounderDialect::kBareCoordinate:
      return "Locate the element the plan refers to and reply with its position as (x, y), "
             "in " + scale + ".";
    case GrounderDialect::kVerbScript:
      return "Translate the plan into a pyautogui script in a fenced block. Coordinates are " +
             scale + ".";
  }
  return "";
}

ChatMessage ObservationMessage(const Observation& obs, const std::string& heading) {
  ChatMessage m;
  m.role = "user";
  std::string text = heading;
  if (obs.a11y_text) {
    text += "\nAccessibility tree (role, name, text, position, size):\n";
    text += obs.a11y_text->empty() ? "(no elements)" : *obs.a11y_text;
  }
  if (obs.som_map) text += "\nNumbered tags mark the listed elements in the screenshot, in order.";
  m.parts.push_back({ContentPart::Kind::kText, text, {}});
  if (obs.screenshot) m.parts.push_back({ContentPart::Kind::kImage, "", *obs.screenshot});
  return m;
}

}  // namespace

MetaPromptRegistry MetaPromptRegistry::Builtin() {
  MetaPromptRegistry r;
  r.Register("calc", std::string(kCalcPrompt) + "\n\n" + std::string(kActionGuide));
  r.Register("planetarium", std::string(kPlanetariumPrompt) + "\n\n" + std::string(kActionGuide));
  r.Register("generic", std::string(kGenericPrompt) + "\n\n" + std::string(kActionGuide));
  return r;
}

void MetaPromptRegistry::Register(std::string id, std::string text) {
  prompts_[std::move(id)] = std::move(text);
}

const std::string* MetaPromptRegistry::Find(std::string_view id) const {
  auto it = prompts_.find(id);
  return it == prompts_.end() ? nullptr : &it->second;
}

std::vector<std::string> MetaPromptRegistry::Ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : prompts_) ids.push_back(id);
  return ids;
}

std::string ObservationDigest(const Observation& obs) {
  std::string out;
  if (obs.screenshot) out += "[screenshot sha256:" + Sha256Hex(*obs.screenshot) + "]";
  if (obs.a11y_text) {
    if (!out.empty()) out += '\n';
    out += *obs.a11y_text;
  }
  return out;
}

Prompt BuildPrompt(const Task& task, const Memory& memory, const Observation& latest,
                   const MetaPromptRegistry& registry) {
  const std::string* meta = registry.Find(task.meta_prompt_id);
  if (meta == nullptr) {
    throw ConfigError("no meta prompt registered for '" + task.meta_prompt_id + "'");
  }
  Prompt p;
  p.push_back(ChatMessage::Text("system", *meta));

  const auto& history = memory.history();
  const auto& recent = memory.recent();
  size_t older = history.size() - recent.size();
  if (older > 0) {
    std::string text = "Earlier replies, oldest first:";
    for (size_t i = 0; i < older; ++i) {
      text += "\n[" + std::to_string(i) + "] " + history[i];
    }
    p.push_back(ChatMessage::Text("user", text));
  }
  for (const MemoryItem& item : recent) {
    p.push_back(ChatMessage::Text("user", "Earlier observation:\n" + item.observation_digest));
    p.push_back(ChatMessage::Text("assistant", item.action_summary));
  }
  ChatMessage last = ObservationMessage(latest, "Current observation.");
  last.parts.front().text += "\n" + std::string(kTaskFrame) + task.instruction;
  p.push_back(std::move(last));
  return p;
}

Prompt BuildGrounderPrompt(const Task& task, const Observation& latest, const std::string& plan,
                           const GrounderProfile& profile) {
  Prompt p;
  p.push_back(ChatMessage::Text("system", GrounderGuide(profile)));
  ChatMessage m = ObservationMessage(latest, "Plan:\n" + plan);
  m.parts.front().text += "\n" + std::string(kTaskFrame) + task.instruction;
  p.push_back(std::move(m));
  return p;
}

size_t WordCount(std::string_view text) {
  size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c));
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace deskbench
