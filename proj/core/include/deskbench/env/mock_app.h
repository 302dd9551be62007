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
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "deskbench/env/protocol.h"
#include "deskbench/image.h"
#include "deskbench/model.h"
#include "deskbench/observation.h"

namespace deskbench {

// A declared on-screen element of a mock application.
struct Widget {
  std::string name;  // unique within an application
  std::string role;
  std::string text;
  Box bbox;
  std::string parent;  // empty for the root
  bool visible = true;
  bool showing = true;
  bool enabled = true;
  bool editable = false;
};

// In-process instrumented application: a structured state dump, a command
// interpreter, registered APIs, a virtual file system and a GUI described by
// widgets. Not thread-safe; servers serialize access.
class MockApp {
 public:
  explicit MockApp(Resolution resolution = {});
  virtual ~MockApp() = default;

  virtual std::string_view name() const = 0;
  Resolution resolution() const { return resolution_; }

  // Restores the initial state. The seed is recorded in the dump.
  void Reset(std::uint64_t seed);
  // Throws EnvError(422, "setup step i: ...") on the first failing step.
  void Setup(const std::vector<SetupStep>& steps);
  ExecResult Exec(const Action& action);

  nlohmann::json Dump() const;
  // Dump path first, then a named command; EnvError(404) otherwise.
  nlohmann::json Query(std::string_view query) const;
  // EnvError(404, "no such command") for unregistered commands.
  std::string Command(std::string_view cmd, const nlohmann::json& kwargs) const;

  A11yNode A11y() const;
  Image Render() const;
  Bytes Screenshot() const;
  // EnvError(404) for missing files.
  Bytes File(std::string_view path) const;

  // Every declared widget, root first.
  virtual std::vector<Widget> Widgets() const = 0;

 protected:
  virtual nlohmann::json InitialState() const = 0;
  // Recomputes fields that depend on others after any mutation.
  virtual void Derive() {}
  virtual ExecResult RunCliLine(std::string_view line) = 0;
  virtual std::optional<std::string> NamedCommand(std::string_view cmd,
                                                  const nlohmann::json& kwargs) const = 0;
  virtual std::optional<ExecResult> CallApi(std::string_view name,
                                            const nlohmann::json& args) = 0;
  // Left click on a non-editable widget.
  virtual ExecResult Activate(const Widget& widget) = 0;
  // Enter pressed in a focused entry.
  virtual ExecResult Submit(const Widget& entry) = 0;
  // Text shown in an entry when it gains focus.
  virtual std::string EntryInitialText(const Widget& entry) const;
  virtual bool SelectAllOnFocus() const { return true; }
  // Called after every edit of a focused entry's buffer.
  virtual void OnEntryEdited(const Widget& entry, const std::string& buffer);
  virtual ExecResult Scroll(const Widget* target, int amount, bool horizontal);
  virtual void AdvanceTime(double seconds);
  virtual void PaintExtra(Image& image) const;

  const std::string& EntryBuffer(const std::string& name) const;
  bool Focused(const std::string& name) const;
  void ClearFocus();
  void WriteFile(const std::string& path, Bytes content);

  nlohmann::json state_;

 private:
  ExecResult RunCode(std::string_view code);
  ExecResult RunGui(const std::vector<GuiCommand>& cmds);
  ExecResult RunGuiCommand(const GuiCommand& cmd);
  ExecResult Click(const GuiCommand& cmd);
  ExecResult Key(const std::string& key);
  ExecResult TypeText(const std::string& text);
  const Widget* TargetAt(PixelPoint p, std::vector<Widget>* storage) const;
  void ApplyStep(const SetupStep& step);
  void EditEntry(std::string buffer);

  Resolution resolution_;
  std::uint64_t seed_ = 0;
  double clock_ = 0;
  PixelPoint cursor_;
  std::string focus_;
  bool select_all_ = false;
  std::string pressed_;
  std::map<std::string, std::string> entries_;
  std::map<std::string, Bytes, std::less<>> files_;
};

// Calculator: "eval <expr>", "let <name> = <expr>", "clear", "history",
// "export <path>"; keypad GUI; API compute/clear.
class MiniCalc : public MockApp {
 public:
  using MockApp::MockApp;
  std::string_view name() const override { return "MiniCalc"; }
  std::vector<Widget> Widgets() const override;

  // Arithmetic over + - * / and parentheses with the current variables.
  // Throws std::invalid_argument for malformed input or division by zero.
  double Evaluate(std::string_view expr) const;

 protected:
  nlohmann::json InitialState() const override;
  ExecResult RunCliLine(std::string_view line) override;
  std::optional<std::string> NamedCommand(std::string_view cmd,
                                          const nlohmann::json& kwargs) const override;
  std::optional<ExecResult> CallApi(std::string_view name,
                                    const nlohmann::json& args) override;
  ExecResult Activate(const Widget& widget) override;
  ExecResult Submit(const Widget& entry) override;
  std::string EntryInitialText(const Widget& entry) const override;
  bool SelectAllOnFocus() const override { return false; }
  void OnEntryEdited(const Widget& entry, const std::string& buffer) override;

 private:
  ExecResult EvalAndRecord(std::string_view expr);
};

// Planetarium with a Julian-date clock, observer position, per-object
// distance / visibility / label state and an eclipse near Earth.
class MiniPlanetarium : public MockApp {
 public:
  static constexpr double kJ2000 = 2451545.0;
  static constexpr double kEclipseJd = 2460409.25;
  static constexpr double kEclipseHalfWidthDays = 0.1;
  static constexpr double kStandoffKm = 10000;

  using MockApp::MockApp;
  std::string_view name() const override { return "MiniPlanetarium"; }
  std::vector<Widget> Widgets() const override;

  // Heliocentric position along the viewing axis, km.
  static double PositionKm(std::string_view object);
  static const std::vector<std::string>& ObjectNames();

 protected:
  nlohmann::json InitialState() const override;
  void Derive() override;
  ExecResult RunCliLine(std::string_view line) override;
  std::optional<std::string> NamedCommand(std::string_view cmd,
                                          const nlohmann::json& kwargs) const override;
  std::optional<ExecResult> CallApi(std::string_view name,
                                    const nlohmann::json& args) override;
  ExecResult Activate(const Widget& widget) override;
  ExecResult Submit(const Widget& entry) override;
  std::string EntryInitialText(const Widget& entry) const override;
  ExecResult Scroll(const Widget* target, int amount, bool horizontal) override;
  void AdvanceTime(double seconds) override;
  void PaintExtra(Image& image) const override;

 private:
  ExecResult Goto(const std::string& object);
  ExecResult SetTime(double jd);
  bool Known(const std::string& object) const;
};

// "calc" / "minicalc" and "planetarium" / "miniplanetarium"; null otherwise.
std::unique_ptr<MockApp> MakeMockApp(std::string_view kind, Resolution res = {});

}  // namespace deskbench
