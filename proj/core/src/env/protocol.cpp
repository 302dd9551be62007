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

#include "deskbench/env/protocol.h"

#include <stdexcept>

#include "deskbench/env/environment.h"

namespace deskbench {

namespace {

const nlohmann::json& Field(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  }
  return *it;
}

}  // namespace

nlohmann::json ToJson(const GuiCommand& cmd) {
  nlohmann::json j = {{"verb", ToString(cmd.verb)}};
  if (cmd.point) {
    j["x"] = cmd.point->x;
    j["y"] = cmd.point->y;
  }
  if (cmd.offset) {
    j["dx"] = cmd.offset->x;
    j["dy"] = cmd.offset->y;
  }
  if (cmd.button) j["button"] = ToString(*cmd.button);
  if (cmd.clicks != 1) j["clicks"] = cmd.clicks;
  if (!cmd.text.empty()) j["text"] = cmd.text;
  if (!cmd.keys.empty()) j["keys"] = cmd.keys;
  if (cmd.amount != 0) j["amount"] = cmd.amount;
  if (cmd.horizontal) j["horizontal"] = true;
  return j;
}

GuiCommand GuiCommandFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("command must be an object");
  GuiCommand cmd;
  auto verb = ParseGuiVerb(Field(j, "verb").get<std::string>());
  if (!verb) throw std::invalid_argument("unknown verb " + DumpJson(j["verb"]));
  cmd.verb = *verb;
  if (j.contains("x") || j.contains("y")) {
    cmd.point = PixelPoint{Field(j, "x").get<int>(), Field(j, "y").get<int>()};
  }
  if (j.contains("dx") || j.contains("dy")) {
    cmd.offset = PixelPoint{j.value("dx", 0), j.value("dy", 0)};
  }
  if (j.contains("button")) {
    auto b = ParseMouseButton(j["button"].get<std::string>());
    if (!b) throw std::invalid_argument("unknown button " + DumpJson(j["button"]));
    cmd.button = *b;
  }
  cmd.clicks = j.value("clicks", 1);
  cmd.text = j.value("text", "");
  cmd.keys = j.value("keys", std::vector<std::string>{});
  cmd.amount = j.value("amount", 0);
  cmd.horizontal = j.value("horizontal", false);
  return cmd;
}

nlohmann::json ActionToWire(const Action& action) {
  nlohmann::json j = {{"kind", ToString(action.kind)}};
  switch (action.kind) {
    case ActionKind::kGuiScript: {
      nlohmann::json cmds = nlohmann::json::array();
      for (const GuiCommand& c : action.gui_commands) cmds.push_back(ToJson(c));
      j["commands"] = std::move(cmds);
      break;
    }
    case ActionKind::kCliCode:
      j["code"] = action.code;
      break;
    case ActionKind::kWait:
      j["seconds"] = action.wait_seconds;
      break;
    case ActionKind::kApiCall:
      j["name"] = action.api_name;
      j["args"] = ToJson(action.api_args);
      break;
    case ActionKind::kAnswer:
      j["text"] = action.answer_text;
      break;
    default:
      break;
  }
  return j;
}

Action ActionFromWire(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("action must be an object");
  auto kind = ParseActionKind(Field(j, "kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown action kind " + DumpJson(j["kind"]));
  Action a;
  a.kind = *kind;
  switch (a.kind) {
    case ActionKind::kGuiScript:
      for (const auto& c : Field(j, "commands")) {
        a.gui_commands.push_back(GuiCommandFromJson(c));
      }
      break;
    case ActionKind::kCliCode:
      a.code = Field(j, "code").get<std::string>();
      break;
    case ActionKind::kWait:
      a.wait_seconds = Field(j, "seconds").get<double>();
      break;
    case ActionKind::kApiCall:
      a.api_name = Field(j, "name").get<std::string>();
      a.api_args = FromJson(j.value("args", nlohmann::json::object()));
      break;
    case ActionKind::kAnswer:
      a.answer_text = j.value("text", "");
      break;
    default:
      break;
  }
  return a;
}

nlohmann::json ToJson(const ExecResult& r) {
  return {{"ok", r.ok}, {"output", r.output}, {"diagnostic", r.diagnostic}};
}

ExecResult ExecResultFromJson(const nlohmann::json& j) {
  ExecResult r;
  r.ok = Field(j, "ok").get<bool>();
  r.output = j.value("output", "");
  r.diagnostic = j.value("diagnostic", "");
  return r;
}

nlohmann::json ToJson(const SetupStep& step) {
  return {{"kind", ToString(step.kind)}, {"payload", ToJson(step.payload)}};
}

SetupStep SetupStepFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("setup step must be an object");
  auto kind = ParseSetupKind(Field(j, "kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown setup kind " + DumpJson(j["kind"]));
  SetupStep s;
  s.kind = *kind;
  s.payload = FromJson(j.value("payload", nlohmann::json::object()));
  if (auto err = ValidateSetupStep(s)) throw std::invalid_argument(*err);
  return s;
}

nlohmann::json SetupBody(const std::vector<SetupStep>& steps,
                         std::optional<std::uint64_t> reset_seed) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SetupStep& s : steps) arr.push_back(ToJson(s));
  nlohmann::json body = {{"steps", std::move(arr)}};
  if (reset_seed) {
    body["reset"] = true;
    body["seed"] = *reset_seed;
  }
  return body;
}

StateSnapshot TakeSnapshot(Environment& env) {
  StateSnapshot s;
  s.dump = env.GetState();
  s.fetched_at = std::chrono::steady_clock::now();
  return s;
}

}  // namespace deskbench
