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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "deskbench/env/mock_app.h"

namespace deskbench {

namespace {

constexpr Rgb kSky{12, 16, 40};
constexpr Rgb kLabel{230, 230, 170};

struct Body {
  const char* name;
  const char* kind;
  double position_km;
  Rgb color;
};

constexpr Body kBodies[] = {
    {"Sol", "star", 0, {255, 214, 80}},
    {"Mercury", "planet", 57909050, {170, 160, 150}},
    {"Earth", "planet", 149598023, {70, 130, 230}},
    {"Moon", "moon", 149598023 + 384400, {200, 200, 200}},
    {"Mars", "planet", 227939366, {210, 90, 50}},
};

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> Words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::optional<double> ParseNumber(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<bool> ParseSwitch(const std::string& s) {
  if (s == "on") return true;
  if (s == "off") return false;
  return std::nullopt;
}

std::optional<std::string> Canonical(std::string_view name) {
  for (const Body& b : kBodies) {
    std::string_view n = b.name;
    if (n.size() == name.size() &&
        std::equal(n.begin(), n.end(), name.begin(), [](char a, char c) {
          return std::tolower(static_cast<unsigned char>(a)) ==
                 std::tolower(static_cast<unsigned char>(c));
        })) {
      return std::string(n);
    }
  }
  return std::nullopt;
}

ExecResult Unknown(const std::string& name) {
  return {false, "", "unknown object '" + name + "'"};
}

}  // namespace

const std::vector<std::string>& MiniPlanetarium::ObjectNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Body& b : kBodies) v.push_back(b.name);
    return v;
  }();
  return names;
}

double MiniPlanetarium::PositionKm(std::string_view object) {
  for (const Body& b : kBodies) {
    if (object == b.name) return b.position_km;
  }
  return 0;
}

bool MiniPlanetarium::Known(const std::string& object) const {
  return state_["objects"].contains(object);
}

nlohmann::json MiniPlanetarium::InitialState() const {
  nlohmann::json objects = nlohmann::json::object();
  for (const Body& b : kBodies) {
    objects[b.name] = {{"kind", b.kind}, {"distance", 0.0}, {"visible", true},
                       {"shown", true},  {"label", true}};
  }
  return {
      {"app", "MiniPlanetarium"},
      {"simTime", kJ2000},
      {"timeRate", 0.0},
      {"selected", "Sol"},
      {"observer", {{"near", "Sol"}}},
      {"fov", 60.0},
      {"objects", std::move(objects)},
      {"eclipse", {{"fraction", 0.0}}},
      {"document", nullptr},
  };
}

void MiniPlanetarium::Derive() {
  std::string near = state_["observer"]["near"].get<std::string>();
  double t = state_["simTime"].get<double>();
  double fraction = 0;
  if (near == "Earth") {
    fraction = std::max(0.0, 1.0 - std::fabs(t - kEclipseJd) / kEclipseHalfWidthDays);
  }
  state_["eclipse"]["fraction"] = fraction;
  double observer = PositionKm(near) + kStandoffKm;
  for (auto& [name, obj] : state_["objects"].items()) {
    obj["distance"] = std::fabs(PositionKm(name) - observer);
    bool occulted = name == "Sol" && fraction > 0.99;
    obj["visible"] = obj["shown"].get<bool>() && !occulted;
  }
}

ExecResult MiniPlanetarium::SetTime(double jd) {
  state_["simTime"] = jd;
  Derive();
  return {true, FormatNumber(jd), ""};
}

ExecResult MiniPlanetarium::Goto(const std::string& object) {
  state_["observer"]["near"] = object;
  state_["selected"] = object;
  Derive();
  return {true, "observer near " + object, ""};
}

ExecResult MiniPlanetarium::RunCliLine(std::string_view line) {
  std::vector<std::string> w = Words(line);
  const std::string& cmd = w[0];
  auto object_arg = [&](size_t i) -> std::optional<std::string> {
    return w.size() > i ? Canonical(w[i]) : std::nullopt;
  };
  if (cmd == "settime") {
    auto jd = w.size() == 2 ? ParseNumber(w[1]) : std::nullopt;
    if (!jd) return {false, "", "usage: settime <julian date>"};
    return SetTime(*jd);
  }
  if (cmd == "time") return {true, FormatNumber(state_["simTime"].get<double>()), ""};
  if (cmd == "select" || cmd == "goto" || cmd == "show" || cmd == "hide") {
    std::optional<std::string> obj =
        cmd == "goto" && w.size() == 1 ? state_["selected"].get<std::string>() : object_arg(1);
    if (!obj) return w.size() > 1 ? Unknown(w[1]) : ExecResult{false, "", "usage: " + cmd + " <object>"};
    if (cmd == "goto") return Goto(*obj);
    if (cmd == "select") {
      state_["selected"] = *obj;
      return {true, "selected " + *obj, ""};
    }
    state_["objects"][*obj]["shown"] = cmd == "show";
    return {};
  }
  if (cmd == "labels") {
    auto on = w.size() == 2 ? ParseSwitch(w[1]) : std::nullopt;
    if (!on) return {false, "", "usage: labels on|off"};
    for (auto& [_, obj] : state_["objects"].items()) obj["label"] = *on;
    return {};
  }
  if (cmd == "label") {
    auto on = w.size() == 3 ? ParseSwitch(w[2]) : std::nullopt;
    if (!on) return {false, "", "usage: label <object> on|off"};
    auto obj = object_arg(1);
    if (!obj) return Unknown(w[1]);
    state_["objects"][*obj]["label"] = *on;
    return {};
  }
  if (cmd == "rate") {
    auto r = w.size() == 2 ? ParseNumber(w[1]) : std::nullopt;
    if (!r) return {false, "", "usage: rate <days per second>"};
    state_["timeRate"] = *r;
    return {};
  }
  if (cmd == "fov") {
    auto f = w.size() == 2 ? ParseNumber(w[1]) : std::nullopt;
    if (!f || *f < 1 || *f > 120) return {false, "", "usage: fov <degrees in [1, 120]>"};
    state_["fov"] = *f;
    return {};
  }
  return {false, "", "unknown command '" + cmd + "'"};
}

std::optional<std::string> MiniPlanetarium::NamedCommand(std::string_view cmd,
                                                         const nlohmann::json&) const {
  auto list = [this](const char* flag) {
    std::string out;
    for (const auto& [name, obj] : state_["objects"].items()) {
      if (flag != nullptr && !obj[flag].get<bool>()) continue;
      if (!out.empty()) out += '\n';
      out += name;
    }
    return out;
  };
  if (cmd == "list.objects") return list(nullptr);
  if (cmd == "list.labels") return list("label");
  if (cmd == "list.visible") return list("visible");
  if (cmd == "sel" || cmd == "selected") return state_["selected"].get<std::string>();
  if (cmd == "time") return FormatNumber(state_["simTime"].get<double>());
  return std::nullopt;
}

std::optional<ExecResult> MiniPlanetarium::CallApi(std::string_view name,
                                                   const nlohmann::json& args) {
  if (name == "set_time") {
    if (!args.is_object() || !args.contains("jd") || !args["jd"].is_number()) {
      return ExecResult{false, "", "set_time requires number 'jd'"};
    }
    return SetTime(args["jd"].get<double>());
  }
  if (name == "goto" || name == "select") {
    if (!args.is_object() || !args.contains("target") || !args["target"].is_string()) {
      return ExecResult{false, "", std::string(name) + " requires string 'target'"};
    }
    std::string target = args["target"].get<std::string>();
    auto obj = Canonical(target);
    if (!obj) return Unknown(target);
    if (name == "goto") return Goto(*obj);
    state_["selected"] = *obj;
    return ExecResult{true, "selected " + *obj, ""};
  }
  return std::nullopt;
}

std::vector<Widget> MiniPlanetarium::Widgets() const {
  const int w = resolution().width;
  const int h = resolution().height;
  double t = state_["simTime"].get<double>();
  std::vector<Widget> out;
  out.push_back({"MiniPlanetarium", "frame", "", {0, 0, w, h}, "", true, true, false, false});
  out.push_back({"Toolbar", "panel", "", {0, 40, w, 80}, "MiniPlanetarium", true, true, false, false});
  out.push_back({"-day", "push button", "", {20, 50, 120, 60}, "Toolbar", true, true, true, false});
  out.push_back({"+day", "push button", "", {150, 50, 120, 60}, "Toolbar", true, true, true, false});
  out.push_back({"Now", "push button", "", {280, 50, 120, 60}, "Toolbar", true, true, true, false});
  out.push_back({"Go to", "push button", "", {410, 50, 160, 60}, "Toolbar", true, true, true, false});
  out.push_back({"Labels", "push button", "", {580, 50, 160, 60}, "Toolbar", true, true, true, false});
  std::string jd = Focused("Julian date") ? EntryBuffer("Julian date") : FormatNumber(t);
  out.push_back({"Julian date", "entry", jd, {760, 50, 400, 60}, "Toolbar", true, true, true, true});
  std::string status = "JD " + FormatNumber(t) + "  SEL " + state_["selected"].get<std::string>() +
                       "  NEAR " + state_["observer"]["near"].get<std::string>();
  out.push_back({"Status", "label", status, {1180, 50, 720, 60}, "Toolbar", true, true, false, false});
  out.push_back({"Objects", "panel", "", {20, 140, 300, 900}, "MiniPlanetarium", true, true, false, false});
  int i = 0;
  for (const Body& b : kBodies) {
    out.push_back({b.name, "push button", "", {30, 150 + i * 70, 280, 60}, "Objects",
                   true, true, true, false});
    ++i;
  }
  out.push_back({"Sky", "canvas", "", {340, 140, 1560, 900}, "MiniPlanetarium",
                 true, true, false, false});
  out.push_back({"Debug console", "label", "ready", {0, 1000, 400, 80}, "MiniPlanetarium",
                 true, false, false, false});
  return out;
}

ExecResult MiniPlanetarium::Activate(const Widget& widget) {
  const std::string& n = widget.name;
  double t = state_["simTime"].get<double>();
  if (n == "+day") return SetTime(t + 1);
  if (n == "-day") return SetTime(t - 1);
  if (n == "Now") return SetTime(kJ2000);
  if (n == "Go to") return Goto(state_["selected"].get<std::string>());
  if (n == "Labels") {
    bool any = false;
    for (const auto& [_, obj] : state_["objects"].items()) any = any || obj["label"].get<bool>();
    for (auto& [_, obj] : state_["objects"].items()) obj["label"] = !any;
    return {};
  }
  if (auto obj = Canonical(n)) {
    state_["selected"] = *obj;
    return {true, "selected " + *obj, ""};
  }
  return {true, "", "no action for '" + n + "'"};
}

ExecResult MiniPlanetarium::Submit(const Widget& entry) {
  std::string text = Trim(EntryBuffer(entry.name));
  ClearFocus();
  auto jd = ParseNumber(text);
  if (!jd) return {false, "", "invalid Julian date '" + text + "'"};
  return SetTime(*jd);
}

std::string MiniPlanetarium::EntryInitialText(const Widget&) const {
  return FormatNumber(state_["simTime"].get<double>());
}

ExecResult MiniPlanetarium::Scroll(const Widget*, int amount, bool horizontal) {
  if (horizontal || amount == 0) return {true, "", "nothing to scroll"};
  double fov = std::clamp(state_["fov"].get<double>() - 5.0 * amount, 1.0, 120.0);
  state_["fov"] = fov;
  return {true, "fov " + FormatNumber(fov), ""};
}

void MiniPlanetarium::AdvanceTime(double seconds) {
  double rate = state_["timeRate"].get<double>();
  if (rate != 0) state_["simTime"] = state_["simTime"].get<double>() + rate * seconds;
}

void MiniPlanetarium::PaintExtra(Image& image) const {
  const Box sky{340, 140, 1560, 900};
  image.FillRect(sky, kSky);
  int i = 0;
  for (const Body& b : kBodies) {
    const auto& obj = state_["objects"][b.name];
    int x = sky.x + 120 + i * 300;
    int y = sky.y + sky.h / 2;
    ++i;
    if (!obj["visible"].get<bool>()) continue;
    int r = b.name == std::string_view("Sol") ? 30 : 14;
    image.FillRect({x - r, y - r, 2 * r, 2 * r}, b.color);
    if (obj["label"].get<bool>()) image.DrawText(x - r, y + r + 10, b.name, 3, kLabel);
  }
  image.DrawText(sky.x + 20, sky.y + 20, "FOV " + FormatNumber(state_["fov"].get<double>()), 3,
                 kLabel);
}

}  // namespace deskbench
