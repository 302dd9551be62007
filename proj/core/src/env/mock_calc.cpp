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

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "deskbench/env/mock_app.h"

namespace deskbench {

namespace {

constexpr const char* kKeypad[5][4] = {
    {"7", "8", "9", "/"},
    {"4", "5", "6", "*"},
    {"1", "2", "3", "-"},
    {"0", ".", "=", "+"},
    {"C", "(", ")", "Ans"},
};

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool IsIdent(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

class Arith {
 public:
  Arith(std::string_view src, const nlohmann::json& vars, const nlohmann::json& ans)
      : src_(src), vars_(vars), ans_(ans) {}

  double Run() {
    double v = Sum();
    Skip();
    if (pos_ < src_.size()) Error(std::string("unexpected '") + src_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void Error(const std::string& msg) const {
    throw std::invalid_argument(msg + " at position " + std::to_string(pos_));
  }

  void Skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool Eat(char c) {
    Skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double Sum() {
    double v = Product();
    while (true) {
      if (Eat('+')) {
        v += Product();
      } else if (Eat('-')) {
        v -= Product();
      } else {
        return v;
      }
    }
  }

  double Product() {
    double v = Unary();
    while (true) {
      if (Eat('*')) {
        v *= Unary();
      } else if (Eat('/')) {
        size_t at = pos_;
        double d = Unary();
        if (d == 0) {
          pos_ = at;
          Error("division by zero");
        }
        v /= d;
      } else {
        return v;
      }
    }
  }

  double Unary() {
    if (Eat('-')) return -Unary();
    if (Eat('+')) return Unary();
    return Atom();
  }

  double Atom() {
    Skip();
    if (Eat('(')) {
      double v = Sum();
      if (!Eat(')')) Error("expected ')'");
      return v;
    }
    if (pos_ >= src_.size()) Error("unexpected end of expression");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        size_t save = pos_++;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      std::string text(src_.substr(start, pos_ - start));
      char* end = nullptr;
      double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size()) {
        pos_ = start;
        Error("malformed number '" + text + "'");
      }
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      if (name == "ans" || name == "Ans") {
        if (!ans_.is_number()) Error("no previous result");
        return ans_.get<double>();
      }
      auto it = vars_.find(name);
      if (it == vars_.end()) {
        pos_ = start;
        Error("unknown variable '" + name + "'");
      }
      return it->get<double>();
    }
    Error(std::string("unexpected '") + c + "'");
  }

  std::string_view src_;
  const nlohmann::json& vars_;
  const nlohmann::json& ans_;
  size_t pos_ = 0;
};

std::string Join(const nlohmann::json& arr) {
  std::string out;
  for (const auto& e : arr) {
    if (!out.empty()) out += '\n';
    out += e.get<std::string>();
  }
  return out;
}

}  // namespace

nlohmann::json MiniCalc::InitialState() const {
  return {
      {"app", "MiniCalc"},
      {"expression", ""},
      {"display", "0"},
      {"last_result", nullptr},
      {"history", nlohmann::json::array()},
      {"results", nlohmann::json::array()},
      {"variables", nlohmann::json::object()},
      {"document", nullptr},
  };
}

double MiniCalc::Evaluate(std::string_view expr) const {
  double v = Arith(expr, state_["variables"], state_["last_result"]).Run();
  if (!std::isfinite(v)) throw std::invalid_argument("result is not finite");
  return v;
}

ExecResult MiniCalc::EvalAndRecord(std::string_view expr) {
  std::string e = Trim(expr);
  if (e.empty()) return {false, "", "empty expression"};
  double v;
  try {
    v = Evaluate(e);
  } catch (const std::invalid_argument& err) {
    state_["display"] = "Error";
    return {false, "", err.what()};
  }
  state_["last_result"] = v;
  state_["display"] = FormatNumber(v);
  state_["history"].push_back(e);
  state_["results"].push_back(v);
  return {true, FormatNumber(v), ""};
}

ExecResult MiniCalc::RunCliLine(std::string_view line) {
  size_t sp = line.find(' ');
  std::string cmd(line.substr(0, sp));
  std::string rest = sp == std::string_view::npos ? "" : Trim(line.substr(sp + 1));
  if (cmd == "eval") return EvalAndRecord(rest);
  if (cmd == "let") {
    size_t eq = rest.find('=');
    std::string name = Trim(rest.substr(0, eq));
    if (eq == std::string::npos || !IsIdent(name) || name == "ans" || name == "Ans") {
      return {false, "", "usage: let <name> = <expr>"};
    }
    try {
      double v = Evaluate(rest.substr(eq + 1));
      state_["variables"][name] = v;
      return {true, name + " = " + FormatNumber(v), ""};
    } catch (const std::invalid_argument& err) {
      return {false, "", err.what()};
    }
  }
  if (cmd == "clear") {
    state_["expression"] = "";
    state_["display"] = "0";
    return {};
  }
  if (cmd == "history") return {true, Join(state_["history"]), ""};
  if (cmd == "export") {
    if (rest.empty()) return {false, "", "usage: export <path>"};
    std::string content;
    const auto& h = state_["history"];
    const auto& r = state_["results"];
    for (size_t i = 0; i < h.size(); ++i) {
      content += h[i].get<std::string>() + " = " + FormatNumber(r[i].get<double>()) + "\n";
    }
    WriteFile(rest, Bytes(content.begin(), content.end()));
    return {true, "exported " + std::to_string(h.size()) + " lines to " + rest, ""};
  }
  return {false, "", "unknown command '" + cmd + "'"};
}

std::optional<std::string> MiniCalc::NamedCommand(std::string_view cmd,
                                                  const nlohmann::json&) const {
  if (cmd == "history") return Join(state_["history"]);
  if (cmd == "result") {
    const auto& r = state_["last_result"];
    return r.is_number() ? FormatNumber(r.get<double>()) : "";
  }
  if (cmd == "display") return state_["display"].get<std::string>();
  if (cmd == "vars") {
    std::string out;
    for (const auto& [k, v] : state_["variables"].items()) {
      if (!out.empty()) out += '\n';
      out += k + "=" + FormatNumber(v.get<double>());
    }
    return out;
  }
  return std::nullopt;
}

std::optional<ExecResult> MiniCalc::CallApi(std::string_view name, const nlohmann::json& args) {
  if (name == "compute") {
    if (!args.is_object() || !args.contains("expr") || !args["expr"].is_string()) {
      return ExecResult{false, "", "compute requires string 'expr'"};
    }
    return EvalAndRecord(args["expr"].get<std::string>());
  }
  if (name == "clear") return RunCliLine("clear");
  return std::nullopt;
}

std::vector<Widget> MiniCalc::Widgets() const {
  std::vector<Widget> w;
  w.push_back({"MiniCalc", "frame", "", {0, 0, resolution().width, resolution().height}, "",
               true, true, false, false});
  std::string expr = Focused("Expression") ? EntryBuffer("Expression")
                                           : state_["expression"].get<std::string>();
  w.push_back({"Expression", "entry", expr, {560, 140, 560, 90}, "MiniCalc",
               true, true, true, true});
  w.push_back({"Display", "label", state_["display"].get<std::string>(), {560, 250, 560, 90},
               "MiniCalc", true, true, false, false});
  w.push_back({"Keypad", "panel", "", {560, 360, 560, 550}, "MiniCalc", true, true, false, false});
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 4; ++c) {
      w.push_back({kKeypad[r][c], "push button", "", {570 + c * 137, 370 + r * 108, 126, 98},
                   "Keypad", true, true, true, false});
    }
  }
  w.push_back({"History", "label", Join(state_["history"]), {1160, 140, 600, 770}, "MiniCalc",
               true, true, false, false});
  w.push_back({"Debug console", "label", "ready", {0, 1000, 400, 80}, "MiniCalc",
               true, false, false, false});
  return w;
}

ExecResult MiniCalc::Activate(const Widget& widget) {
  const std::string& n = widget.name;
  if (n == "=") {
    ExecResult r = EvalAndRecord(state_["expression"].get<std::string>());
    if (r.ok) state_["expression"] = "";
    return r;
  }
  if (n == "C") return RunCliLine("clear");
  if (n == "Ans") {
    const auto& last = state_["last_result"];
    if (!last.is_number()) return {true, "", "no previous result"};
    state_["expression"] = state_["expression"].get<std::string>() + FormatNumber(last.get<double>());
    return {};
  }
  if (widget.role == "push button") {
    state_["expression"] = state_["expression"].get<std::string>() + n;
    return {};
  }
  return {true, "", "no action for '" + n + "'"};
}

ExecResult MiniCalc::Submit(const Widget&) {
  ExecResult r = EvalAndRecord(state_["expression"].get<std::string>());
  if (r.ok) state_["expression"] = "";
  ClearFocus();
  return r;
}

std::string MiniCalc::EntryInitialText(const Widget&) const {
  return state_["expression"].get<std::string>();
}

void MiniCalc::OnEntryEdited(const Widget&, const std::string& buffer) {
  state_["expression"] = buffer;
}

}  // namespace deskbench
