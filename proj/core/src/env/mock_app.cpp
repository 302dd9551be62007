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

#include "deskbench/env/mock_app.h"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "deskbench/env/environment.h"

namespace deskbench {

namespace {

constexpr Rgb kBackground{236, 236, 236};
constexpr Rgb kTitleBar{52, 58, 84};
constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kInk{30, 30, 36};
constexpr Rgb kPanel{222, 224, 230};
constexpr Rgb kPanelEdge{180, 180, 190};
constexpr Rgb kButton{250, 250, 250};
constexpr Rgb kButtonDisabled{200, 200, 200};
constexpr Rgb kButtonEdge{90, 90, 100};
constexpr Rgb kFocusEdge{40, 110, 220};

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> SplitPath(std::string_view dotted) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t dot = dotted.find('.', start);
    parts.emplace_back(dotted.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

const nlohmann::json* Resolve(const nlohmann::json& root, std::string_view dotted) {
  if (dotted.empty()) return nullptr;
  const nlohmann::json* node = &root;
  for (const std::string& part : SplitPath(dotted)) {
    if (!node->is_object()) return nullptr;
    auto it = node->find(part);
    if (it == node->end()) return nullptr;
    node = &*it;
  }
  return node;
}

void SetPath(nlohmann::json* root, std::string_view dotted, nlohmann::json value) {
  std::vector<std::string> parts = SplitPath(dotted);
  nlohmann::json* node = root;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw std::invalid_argument("empty component in '" + std::string(dotted) + "'");
    if (!node->is_object()) {
      throw std::invalid_argument("cannot set '" + std::string(dotted) + "': '" +
                                  parts[i - 1] + "' is not a map");
    }
    if (i + 1 == parts.size()) {
      (*node)[parts[i]] = std::move(value);
      return;
    }
    if (!node->contains(parts[i])) (*node)[parts[i]] = nlohmann::json::object();
    node = &(*node)[parts[i]];
  }
}

ExecResult Fail(std::string diagnostic) { return ExecResult{false, "", std::move(diagnostic)}; }

ExecResult Note(std::string diagnostic) { return ExecResult{true, "", std::move(diagnostic)}; }

void Merge(ExecResult* acc, const ExecResult& r) {
  if (!r.output.empty()) {
    if (!acc->output.empty()) acc->output += '\n';
    acc->output += r.output;
  }
  if (!r.diagnostic.empty()) {
    if (!acc->diagnostic.empty()) acc->diagnostic += "; ";
    acc->diagnostic += r.diagnostic;
  }
  acc->ok = acc->ok && r.ok;
}

Bytes Download(const std::string& url) {
  if (url.rfind("file://", 0) == 0) {
    std::ifstream in(url.substr(7), std::ios::binary);
    if (!in) throw std::runtime_error("download failed: cannot read " + url);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw std::runtime_error("download failed: bad url " + url);
  size_t slash = url.find('/', scheme + 3);
  std::string origin = url.substr(0, slash);
  std::string path = slash == std::string::npos ? "/" : url.substr(slash);
  httplib::Client client(origin);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(10, 0);
  auto res = client.Get(path);
  if (!res) {
    throw std::runtime_error("download failed: " + url + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw std::runtime_error("download failed: " + url + ": status " + std::to_string(res->status));
  }
  return Bytes(res->body.begin(), res->body.end());
}

void DrawCentered(Image& img, const Box& b, const std::string& text, int scale, Rgb c) {
  int tw = TextWidth(text, scale);
  int th = TextHeight(scale);
  img.DrawText(b.x + (b.w - tw) / 2, b.y + (b.h - th) / 2, text, scale, c);
}

}  // namespace

MockApp::MockApp(Resolution resolution) : resolution_(resolution) {}

void MockApp::Reset(std::uint64_t seed) {
  seed_ = seed;
  clock_ = 0;
  cursor_ = {};
  focus_.clear();
  select_all_ = false;
  pressed_.clear();
  entries_.clear();
  files_.clear();
  state_ = InitialState();
  Derive();
}

void MockApp::Setup(const std::vector<SetupStep>& steps) {
  for (size_t i = 0; i < steps.size(); ++i) {
    try {
      ApplyStep(steps[i]);
    } catch (const std::exception& e) {
      throw EnvError(422, "setup step " + std::to_string(i) + ": " + e.what());
    }
  }
}

void MockApp::ApplyStep(const SetupStep& step) {
  if (auto err = ValidateSetupStep(step)) throw std::invalid_argument(*err);
  const Value& p = step.payload;
  switch (step.kind) {
    case SetupKind::kSetState:
      for (const auto& [path, v] : p.as_map()) SetPath(&state_, path, ToJson(v));
      Derive();
      break;
    case SetupKind::kDownloadFile:
      WriteFile(p["path"].as_string(), Download(p["url"].as_string()));
      break;
    case SetupKind::kOpenDocument: {
      const std::string& path = p["path"].as_string();
      if (!files_.count(path)) throw std::runtime_error("no such file: " + path);
      state_["document"] = path;
      break;
    }
    case SetupKind::kCommand: {
      ExecResult r = RunCode(p["cmd"].as_string());
      if (!r.ok) throw std::runtime_error(r.diagnostic);
      break;
    }
  }
}

ExecResult MockApp::Exec(const Action& action) {
  ExecResult r;
  switch (action.kind) {
    case ActionKind::kGuiScript:
      r = RunGui(action.gui_commands);
      break;
    case ActionKind::kCliCode:
      r = RunCode(action.code);
      break;
    case ActionKind::kWait:
      if (!(action.wait_seconds > 0)) return Fail("wait_seconds must be > 0");
      clock_ += action.wait_seconds;
      AdvanceTime(action.wait_seconds);
      break;
    case ActionKind::kApiCall: {
      auto res = CallApi(action.api_name, ToJson(action.api_args));
      r = res ? *res : Fail("unregistered API '" + action.api_name + "'");
      break;
    }
    case ActionKind::kNoop:
      break;
    case ActionKind::kDone:
    case ActionKind::kFail:
    case ActionKind::kAnswer:
      r = Note("terminal action has no effect");
      break;
  }
  Derive();
  return r;
}

ExecResult MockApp::RunCode(std::string_view code) {
  ExecResult acc;
  std::istringstream in{std::string(code)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    ExecResult r = RunCliLine(t);
    Derive();
    if (!r.ok) {
      r.diagnostic = "line " + std::to_string(n) + ": " + r.diagnostic;
      Merge(&acc, r);
      return acc;
    }
    Merge(&acc, r);
  }
  return acc;
}

ExecResult MockApp::RunGui(const std::vector<GuiCommand>& cmds) {
  ExecResult acc;
  for (const GuiCommand& cmd : cmds) {
    Merge(&acc, RunGuiCommand(cmd));
    Derive();
  }
  return acc;
}

const Widget* MockApp::TargetAt(PixelPoint p, std::vector<Widget>* storage) const {
  *storage = Widgets();
  FilteredTree tree = FilterA11y(A11y());
  const A11yNode* hit = HitTest(tree, p);
  if (hit == nullptr) return nullptr;
  for (const Widget& w : *storage) {
    if (w.name == hit->name) return &w;
  }
  return nullptr;
}

ExecResult MockApp::RunGuiCommand(const GuiCommand& cmd) {
  auto clamp = [this](PixelPoint p) {
    p.x = std::clamp(p.x, 0, resolution_.width - 1);
    p.y = std::clamp(p.y, 0, resolution_.height - 1);
    return p;
  };
  std::vector<Widget> storage;
  switch (cmd.verb) {
    case GuiVerb::kMoveTo:
    case GuiVerb::kDragTo:
      if (!cmd.point) return Fail(std::string(ToString(cmd.verb)) + " without a point");
      cursor_ = clamp(*cmd.point);
      return cmd.verb == GuiVerb::kDragTo ? Note("drag has no effect") : ExecResult{};
    case GuiVerb::kMoveRel:
    case GuiVerb::kDragRel: {
      PixelPoint off = cmd.offset.value_or(PixelPoint{});
      cursor_ = clamp({cursor_.x + off.x, cursor_.y + off.y});
      return cmd.verb == GuiVerb::kDragRel ? Note("drag has no effect") : ExecResult{};
    }
    case GuiVerb::kClick:
    case GuiVerb::kRightClick:
    case GuiVerb::kMiddleClick:
    case GuiVerb::kDoubleClick:
    case GuiVerb::kTripleClick:
      return Click(cmd);
    case GuiVerb::kMouseDown: {
      if (cmd.point) cursor_ = clamp(*cmd.point);
      const Widget* w = TargetAt(cursor_, &storage);
      pressed_ = w ? w->name : "";
      return w ? ExecResult{} : Note("no target");
    }
    case GuiVerb::kMouseUp: {
      if (cmd.point) cursor_ = clamp(*cmd.point);
      const Widget* w = TargetAt(cursor_, &storage);
      std::string pressed = std::exchange(pressed_, "");
      if (w == nullptr || w->name != pressed) return Note("no target");
      GuiCommand click;
      click.verb = GuiVerb::kClick;
      return Click(click);
    }
    case GuiVerb::kScroll: {
      if (cmd.point) cursor_ = clamp(*cmd.point);
      return Scroll(TargetAt(cursor_, &storage), cmd.amount, cmd.horizontal);
    }
    case GuiVerb::kTypewrite: {
      if (cmd.keys.empty()) return TypeText(cmd.text);
      ExecResult acc;
      for (const std::string& k : cmd.keys) Merge(&acc, Key(k));
      return acc;
    }
    case GuiVerb::kPress: {
      ExecResult acc;
      for (const std::string& k : cmd.keys) Merge(&acc, Key(k));
      return acc;
    }
    case GuiVerb::kHotkey: {
      std::vector<std::string> keys;
      for (const std::string& k : cmd.keys) keys.push_back(Lower(k));
      bool modifier = std::any_of(keys.begin(), keys.end(), [](const std::string& k) {
        return k == "ctrl" || k == "command" || k == "cmd";
      });
      if (modifier && keys.size() == 2 && keys.back() == "a") {
        if (focus_.empty()) return Note("no focused entry");
        select_all_ = true;
        return {};
      }
      std::string combo;
      for (const std::string& k : keys) combo += (combo.empty() ? "" : "+") + k;
      return Note("unbound hotkey '" + combo + "'");
    }
  }
  return Note("unsupported verb");
}

ExecResult MockApp::Click(const GuiCommand& cmd) {
  if (cmd.point) {
    cursor_ = {std::clamp(cmd.point->x, 0, resolution_.width - 1),
               std::clamp(cmd.point->y, 0, resolution_.height - 1)};
  }
  std::vector<Widget> storage;
  const Widget* w = TargetAt(cursor_, &storage);
  if (w == nullptr) return Note("no target");
  MouseButton button = cmd.button.value_or(MouseButton::kLeft);
  if (cmd.verb == GuiVerb::kRightClick) button = MouseButton::kRight;
  if (cmd.verb == GuiVerb::kMiddleClick) button = MouseButton::kMiddle;
  if (button != MouseButton::kLeft) return Note("no context action for '" + w->name + "'");
  int n = std::max(1, cmd.clicks);
  if (cmd.verb == GuiVerb::kDoubleClick) n = 2;
  if (cmd.verb == GuiVerb::kTripleClick) n = 3;
  if (w->editable) {
    if (focus_ != w->name) {
      ClearFocus();
      focus_ = w->name;
      entries_[w->name] = EntryInitialText(*w);
      select_all_ = SelectAllOnFocus();
    }
    if (n >= 2) select_all_ = true;
    return {};
  }
  ClearFocus();
  ExecResult acc;
  for (int i = 0; i < n; ++i) {
    Merge(&acc, Activate(*w));
    Derive();
  }
  return acc;
}

void MockApp::EditEntry(std::string buffer) {
  entries_[focus_] = std::move(buffer);
  for (const Widget& w : Widgets()) {
    if (w.name == focus_) {
      OnEntryEdited(w, entries_[focus_]);
      break;
    }
  }
}

ExecResult MockApp::TypeText(const std::string& text) {
  if (focus_.empty()) return Note("no focused entry");
  std::string buffer = select_all_ ? text : entries_[focus_] + text;
  select_all_ = false;
  EditEntry(std::move(buffer));
  return {};
}

ExecResult MockApp::Key(const std::string& key) {
  std::string k = Lower(key);
  if (k == "enter" || k == "return") {
    if (focus_.empty()) return Note("no focused entry");
    for (Widget& w : Widgets()) {
      if (w.name == focus_) return Submit(w);
    }
    return Note("no focused entry");
  }
  if (k == "backspace") {
    if (focus_.empty()) return Note("no focused entry");
    std::string buffer = entries_[focus_];
    if (select_all_) {
      buffer.clear();
    } else if (!buffer.empty()) {
      buffer.pop_back();
    }
    select_all_ = false;
    EditEntry(std::move(buffer));
    return {};
  }
  if (k == "escape" || k == "esc") {
    ClearFocus();
    return {};
  }
  if (k == "space") return TypeText(" ");
  if (key.size() == 1) return TypeText(key);
  return Note("unbound key '" + key + "'");
}

std::string MockApp::EntryInitialText(const Widget&) const { return ""; }

void MockApp::OnEntryEdited(const Widget&, const std::string&) {}

ExecResult MockApp::Scroll(const Widget*, int, bool) { return Note("nothing to scroll"); }

void MockApp::AdvanceTime(double) {}

void MockApp::PaintExtra(Image&) const {}

const std::string& MockApp::EntryBuffer(const std::string& name) const {
  static const std::string kEmpty;
  auto it = entries_.find(name);
  return it == entries_.end() ? kEmpty : it->second;
}

bool MockApp::Focused(const std::string& name) const { return focus_ == name; }

void MockApp::ClearFocus() {
  if (!focus_.empty()) entries_.erase(focus_);
  focus_.clear();
  select_all_ = false;
}

void MockApp::WriteFile(const std::string& path, Bytes content) {
  files_[path] = std::move(content);
}

nlohmann::json MockApp::Dump() const {
  nlohmann::json d = state_;
  d["session"] = {{"seed", seed_}, {"clock", clock_}};
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [path, _] : files_) files.push_back(path);
  d["files"] = std::move(files);
  d["ui"] = {{"cursor", {cursor_.x, cursor_.y}},
             {"focus", focus_.empty() ? nlohmann::json() : nlohmann::json(focus_)},
             {"entries", entries_}};
  return d;
}

nlohmann::json MockApp::Query(std::string_view query) const {
  nlohmann::json dump = Dump();
  if (const nlohmann::json* v = Resolve(dump, query)) return *v;
  if (auto out = NamedCommand(query, nlohmann::json::object())) return *out;
  throw EnvError(404, "unknown query '" + std::string(query) + "'");
}

std::string MockApp::Command(std::string_view cmd, const nlohmann::json& kwargs) const {
  if (auto out = NamedCommand(cmd, kwargs)) return *out;
  throw EnvError(404, "no such command: " + std::string(cmd));
}

A11yNode MockApp::A11y() const {
  std::vector<Widget> widgets = Widgets();
  std::vector<A11yNode> nodes(widgets.size());
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < widgets.size(); ++i) {
    const Widget& w = widgets[i];
    A11yNode& n = nodes[i];
    n.role = w.role;
    n.name = w.name;
    n.text = w.text;
    n.bbox = w.bbox;
    if (w.visible) n.states.insert("visible");
    if (w.showing) n.states.insert("showing");
    if (w.enabled) n.states.insert("enabled");
    if (w.editable) n.states.insert("editable");
    if (focus_ == w.name) n.states.insert("focused");
    index[w.name] = i;
  }
  // Children are attached deepest-first so each subtree is complete when moved.
  std::vector<size_t> depth(widgets.size(), 0);
  for (size_t i = 0; i < widgets.size(); ++i) {
    for (std::string p = widgets[i].parent; !p.empty() && index.count(p);
         p = widgets[index[p]].parent) {
      ++depth[i];
      if (depth[i] > widgets.size()) break;
    }
  }
  std::vector<size_t> order(widgets.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return depth[a] > depth[b]; });
  std::vector<std::vector<size_t>> kids(widgets.size());
  for (size_t i = 0; i < widgets.size(); ++i) {
    auto it = index.find(widgets[i].parent);
    if (i != 0 && it != index.end()) kids[it->second].push_back(i);
  }
  for (size_t i : order) {
    for (size_t c : kids[i]) nodes[i].children.push_back(std::move(nodes[c]));
  }
  return widgets.empty() ? A11yNode{} : std::move(nodes[0]);
}

Image MockApp::Render() const {
  Image img(resolution_.width, resolution_.height, kBackground);
  for (const Widget& w : Widgets()) {
    if (!w.visible || !w.showing) continue;
    if (w.role == "frame") {
      img.FillRect({0, 0, resolution_.width, 36}, kTitleBar);
      img.DrawText(12, 8, w.name, 4, kWhite);
    } else if (w.role == "panel" || w.role == "canvas") {
      img.FillRect(w.bbox, kPanel);
      img.StrokeRect(w.bbox, 1, kPanelEdge);
    } else if (w.role == "push button") {
      img.FillRect(w.bbox, w.enabled ? kButton : kButtonDisabled);
      img.StrokeRect(w.bbox, 2, kButtonEdge);
      DrawCentered(img, w.bbox, w.name, 4, kInk);
    } else if (w.role == "entry") {
      img.FillRect(w.bbox, kWhite);
      img.StrokeRect(w.bbox, 2, Focused(w.name) ? kFocusEdge : kButtonEdge);
      int ty = w.bbox.y + (w.bbox.h - TextHeight(4)) / 2;
      img.DrawText(w.bbox.x + 10, ty, w.text, 4, kInk);
      if (Focused(w.name)) {
        int cx = w.bbox.x + 12 + TextWidth(w.text, 4);
        img.FillRect({cx, ty - 2, 2, TextHeight(4) + 4}, kFocusEdge);
      }
    } else {
      std::istringstream lines(w.text);
      std::string line;
      int y = w.bbox.y + 8;
      while (std::getline(lines, line) && y + TextHeight(3) <= w.bbox.y + w.bbox.h) {
        img.DrawText(w.bbox.x + 8, y, line, 3, kInk);
        y += TextHeight(3) + 6;
      }
    }
  }
  PaintExtra(img);
  return img;
}

Bytes MockApp::Screenshot() const { return EncodePng(Render()); }

Bytes MockApp::File(std::string_view path) const {
  auto it = files_.find(path);
  if (it == files_.end()) throw EnvError(404, "not found: " + std::string(path));
  return it->second;
}

std::unique_ptr<MockApp> MakeMockApp(std::string_view kind, Resolution res) {
  std::string k = Lower(std::string(kind));
  if (k == "calc" || k == "minicalc") return std::make_unique<MiniCalc>(res);
  if (k == "planetarium" || k == "miniplanetarium") {
    return std::make_unique<MiniPlanetarium>(res);
  }
  return nullptr;
}

}  // namespace deskbench
