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

#include "deskbench/action_parser.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <utility>

namespace deskbench {

namespace {

constexpr std::string_view kFence = "```";
constexpr std::string_view kWs = " \t\r\n\f\v";
// Wheel clicks per SCROLL [DIR] emitted by point-tag grounders.
constexpr int kGrounderScrollClicks = 5;

std::string_view Trim(std::string_view s) {
  size_t b = s.find_first_not_of(kWs);
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(kWs);
  return s.substr(b, e - b + 1);
}

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsLanguageTag(std::string_view line) {
  static constexpr std::string_view kTags[] = {
      "",      "python", "py",   "python3", "bash", "sh",    "shell",
      "zsh",   "console", "text", "plaintext", "code", "cli", "lean",
      "tex",   "latex",  "json", "cmd"};
  std::string lower(Trim(line));
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(std::begin(kTags), std::end(kTags), lower) != std::end(kTags);
}

// Parses a decimal number at s[i...]; advances i on success.
bool ScanNumber(std::string_view s, size_t& i, double& out) {
  size_t j = i;
  if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
  size_t digits_start = j;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  if (j < s.size() && s[j] == '.') {
    ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  }
  if (j == digits_start || (j == digits_start + 1 && s[digits_start] == '.')) {
    return false;
  }
  if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
    size_t k = j + 1;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
    if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      j = k;
    }
  }
  std::string text(s.substr(i, j - i));
  out = std::strtod(text.c_str(), nullptr);
  i = j;
  return true;
}

bool ParseWholeNumber(std::string_view s, double& out) {
  size_t i = 0;
  return ScanNumber(s, i, out) && i == s.size();
}

void SkipWs(std::string_view s, size_t& i) {
  while (i < s.size() && kWs.find(s[i]) != std::string_view::npos) ++i;
}

bool Consume(std::string_view s, size_t& i, std::string_view token) {
  if (s.substr(i, token.size()) != token) return false;
  i += token.size();
  return true;
}

std::optional<std::string> SpecialBody(std::string_view inner) {
  std::string_view t = Trim(inner);
  if (t == "DONE" || t == "FAIL" || t == "WAIT") return std::string(t);
  auto keyword_with_arg = [&](std::string_view kw) {
    return t.size() > kw.size() && t.substr(0, kw.size()) == kw &&
           kWs.find(t[kw.size()]) != std::string_view::npos;
  };
  if (keyword_with_arg("WAIT")) {
    double n;
    if (ParseWholeNumber(Trim(t.substr(4)), n) && n >= 0 &&
        Trim(t.substr(4)).find_first_of("+-eE") == std::string_view::npos) {
      return std::string(t);
    }
    return std::nullopt;
  }
  if (keyword_with_arg("ANS") || keyword_with_arg("API")) {
    return std::string(t);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Script statements.


// Splits on newlines and ';' outside of string literals and brackets, and
// drops '#' comments.
std::vector<std::string> SplitStatements(std::string_view code) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  int depth = 0;
  bool comment = false;
  auto flush = [&] {
    std::string_view t = Trim(cur);
    if (!t.empty()) out.emplace_back(t);
    cur.clear();
  };
  for (size_t i = 0; i < code.size(); ++i) {
    char c = code[i];
    if (comment) {
      if (c == '\n') {
        comment = false;
        if (depth == 0) flush();
      }
      continue;
    }
    if (quote) {
      cur += c;
      if (c == '\\' && i + 1 < code.size()) {
        cur += code[++i];
      } else if (c == quote) {
        quote = 0;
      } else if (c == '\n') {
        quote = 0;  // unterminated literal; do not swallow the script
        flush();
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      cur += c;
      continue;
    }
    if (c == '#') {
      comment = true;
      continue;
    }
    if (c == '(' || c == '[' || c == '{') ++depth;
    if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
    if ((c == '\n' || c == ';') && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

struct Call {
  std::string verb;  // final identifier of the dotted chain
  std::string args;  // text between the outer parentheses
};

std::optional<Call> ParseCall(std::string_view stmt) {
  size_t i = 0;
  std::string last;
  for (;;) {
    if (i >= stmt.size() || !IsIdentStart(stmt[i])) return std::nullopt;
    size_t b = i;
    while (i < stmt.size() && IsIdentChar(stmt[i])) ++i;
    last = std::string(stmt.substr(b, i - b));
    SkipWs(stmt, i);
    if (i < stmt.size() && stmt[i] == '.') {
      ++i;
      SkipWs(stmt, i);
      continue;
    }
    break;
  }
  if (i >= stmt.size() || stmt[i] != '(' || stmt.back() != ')') {
    return std::nullopt;
  }
  // The opening parenthesis must match the final one.
  int depth = 0;
  char quote = 0;
  for (size_t k = i; k < stmt.size(); ++k) {
    char c = stmt[k];
    if (quote) {
      if (c == '\\') {
        ++k;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '(' || c == '[') {
      ++depth;
    } else if (c == ')' || c == ']') {
      if (--depth == 0 && k != stmt.size() - 1) return std::nullopt;
    }
  }
  if (depth != 0 || quote) return std::nullopt;
  return Call{last, std::string(stmt.substr(i + 1, stmt.size() - i - 2))};
}

struct VerbSpec {
  GuiVerb verb;
  bool horizontal = false;
};

std::optional<VerbSpec> LookupVerb(std::string_view name) {
  if (auto v = ParseGuiVerb(name)) return VerbSpec{*v};
  if (name == "write") return VerbSpec{GuiVerb::kTypewrite};
  if (name == "vscroll") return VerbSpec{GuiVerb::kScroll};
  if (name == "hscroll") return VerbSpec{GuiVerb::kScroll, true};
  return std::nullopt;
}

bool IsIgnorable(std::string_view stmt) {
  auto starts_word = [&](std::string_view w) {
    return stmt.size() > w.size() && stmt.substr(0, w.size()) == w &&
           kWs.find(stmt[w.size()]) != std::string_view::npos;
  };
  if (starts_word("import") || starts_word("from")) return true;
  auto call = ParseCall(stmt);
  return call && call->verb == "sleep";
}

// ---------------------------------------------------------------------------
// Call arguments.

struct Arg {
  enum Kind { kNumber, kString, kIdent, kSeq } kind = kNumber;
  double number = 0;
  std::string text;
  std::vector<Arg> items;
};

struct ArgList {
  std::vector<Arg> positional;
  std::vector<std::pair<std::string, Arg>> keyword;

  const Arg* Keyword(std::string_view name) const {
    for (const auto& [k, v] : keyword) {
      if (k == name) return &v;
    }
    return nullptr;
  }
};

struct ArgError {
  std::string message;
};

class ArgParser {
 public:
  explicit ArgParser(std::string_view s) : s_(s) {}

  ArgList ParseList() {
    ArgList out;
    SkipWs(s_, i_);
    if (i_ == s_.size()) return out;
    for (;;) {
      SkipWs(s_, i_);
      size_t save = i_;
      if (i_ < s_.size() && IsIdentStart(s_[i_])) {
        size_t b = i_;
        while (i_ < s_.size() && IsIdentChar(s_[i_])) ++i_;
        std::string name(s_.substr(b, i_ - b));
        SkipWs(s_, i_);
        if (i_ < s_.size() && s_[i_] == '=' &&
            (i_ + 1 >= s_.size() || s_[i_ + 1] != '=')) {
          ++i_;
          out.keyword.emplace_back(name, ParseValue());
          if (!NextItem()) break;
          continue;
        }
        i_ = save;
      }
      if (!out.keyword.empty()) {
        throw ArgError{"positional argument after keyword argument"};
      }
      out.positional.push_back(ParseValue());
      if (!NextItem()) break;
    }
    SkipWs(s_, i_);
    if (i_ != s_.size()) throw ArgError{"unexpected text in arguments"};
    return out;
  }

 private:
  bool NextItem() {
    SkipWs(s_, i_);
    if (i_ < s_.size() && s_[i_] == ',') {
      ++i_;
      SkipWs(s_, i_);
      return i_ < s_.size();
    }
    return false;
  }

  Arg ParseValue() {
    SkipWs(s_, i_);
    if (i_ >= s_.size()) throw ArgError{"missing argument"};
    char c = s_[i_];
    Arg a;
    if (c == '\'' || c == '"') {
      const char quote = c;
      ++i_;
      a.kind = Arg::kString;
      while (i_ < s_.size() && s_[i_] != quote) {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
          char e = s_[i_ + 1];
          a.text += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          i_ += 2;
          continue;
        }
        a.text += s_[i_++];
      }
      if (i_ >= s_.size()) throw ArgError{"unterminated string"};
      ++i_;
      return a;
    }
    if (c == '(' || c == '[') {
      const char close = c == '(' ? ')' : ']';
      ++i_;
      a.kind = Arg::kSeq;
      SkipWs(s_, i_);
      while (i_ < s_.size() && s_[i_] != close) {
        a.items.push_back(ParseValue());
        SkipWs(s_, i_);
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          SkipWs(s_, i_);
        } else {
          break;
        }
      }
      if (i_ >= s_.size() || s_[i_] != close) throw ArgError{"unclosed sequence"};
      ++i_;
      return a;
    }
    if (IsIdentStart(c)) {
      size_t b = i_;
      while (i_ < s_.size() && IsIdentChar(s_[i_])) ++i_;
      a.kind = Arg::kIdent;
      a.text = std::string(s_.substr(b, i_ - b));
      return a;
    }
    if (ScanNumber(s_, i_, a.number)) {
      a.kind = Arg::kNumber;
      return a;
    }
    throw ArgError{std::string("unexpected '") + c + "' in arguments"};
  }

  std::string_view s_;
  size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Command construction.

using CoordMapper =
    std::function<PixelPoint(RawPoint, std::vector<std::string>*)>;

struct ScriptParse {
  std::vector<GuiCommand> commands;
  std::vector<std::string> diagnostics;
  bool tag_error = false;
};

// Replaces tag_<k> identifiers outside string literals with "cx, cy".
std::string SubstituteTags(std::string_view code, const SomMap* som,
                           ScriptParse* parse) {
  std::string out;
  out.reserve(code.size());
  char quote = 0;
  for (size_t i = 0; i < code.size(); ++i) {
    char c = code[i];
    if (quote) {
      out += c;
      if (c == '\\' && i + 1 < code.size()) {
        out += code[++i];
      } else if (c == quote || c == '\n') {
        quote = 0;
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      out += c;
      continue;
    }
    const bool boundary = i == 0 || !IsIdentChar(code[i - 1]);
    if (boundary && code.substr(i, 4) == "tag_" && i + 4 < code.size() &&
        std::isdigit(static_cast<unsigned char>(code[i + 4]))) {
      size_t j = i + 4;
      while (j < code.size() && std::isdigit(static_cast<unsigned char>(code[j]))) ++j;
      if (j == code.size() || !IsIdentChar(code[j])) {
        std::string digits(code.substr(i + 4, j - i - 4));
        const SomEntry* entry = nullptr;
        if (som && digits.size() < 10) {
          auto it = som->find(std::stoi(digits));
          if (it != som->end()) entry = &it->second;
        }
        if (!entry) {
          parse->tag_error = true;
          parse->diagnostics.push_back("unknown SoM tag tag_" + digits);
          out += "0, 0";
        } else {
          out += std::to_string(entry->center.x) + ", " +
                 std::to_string(entry->center.y);
        }
        i = j - 1;
        continue;
      }
    }
    out += c;
  }
  return out;
}

bool ArgAsNumber(const Arg& a, double* out) {
  if (a.kind != Arg::kNumber) return false;
  *out = a.number;
  return true;
}

std::optional<MouseButton> ArgAsButton(const Arg& a) {
  if (a.kind != Arg::kString) return std::nullopt;
  return ParseMouseButton(a.text);
}

// Extracts an (x, y) pair from the leading positional arguments or x=/y=
// keywords. Returns how many positionals were consumed, or -1 if malformed.
int TakePoint(const ArgList& args, std::optional<RawPoint>* point) {
  int consumed = 0;
  RawPoint p;
  bool have = false;
  const auto& pos = args.positional;
  if (!pos.empty() && pos[0].kind == Arg::kSeq) {
    if (pos[0].items.size() != 2 || !ArgAsNumber(pos[0].items[0], &p.x) ||
        !ArgAsNumber(pos[0].items[1], &p.y)) {
      return -1;
    }
    have = true;
    consumed = 1;
  } else if (!pos.empty() && pos[0].kind == Arg::kNumber) {
    if (pos.size() < 2 || !ArgAsNumber(pos[1], &p.y)) return -1;
    p.x = pos[0].number;
    have = true;
    consumed = 2;
  } else if (!pos.empty() && pos[0].kind == Arg::kString) {
    return -1;
  } else if (!pos.empty() && pos[0].kind == Arg::kIdent &&
             pos[0].text == "None") {
    consumed = pos.size() >= 2 && pos[1].kind == Arg::kIdent ? 2 : 1;
  }
  const Arg* kx = args.Keyword("x");
  const Arg* ky = args.Keyword("y");
  if (kx || ky) {
    if (!kx || !ky || !ArgAsNumber(*kx, &p.x) || !ArgAsNumber(*ky, &p.y)) {
      return -1;
    }
    have = true;
  }
  if (have) *point = p;
  return consumed;
}

std::vector<std::string> ArgAsKeys(const Arg& a) {
  std::vector<std::string> keys;
  if (a.kind == Arg::kString) {
    keys.push_back(a.text);
  } else if (a.kind == Arg::kSeq) {
    for (const auto& item : a.items) {
      if (item.kind != Arg::kString) return {};
      keys.push_back(item.text);
    }
  }
  return keys;
}

std::optional<GuiCommand> BuildCommand(const VerbSpec& spec,
                                       const ArgList& args,
                                       const CoordMapper& map,
                                       std::vector<std::string>* diags,
                                       std::string* error) {
  GuiCommand cmd;
  cmd.verb = spec.verb;
  const auto& pos = args.positional;
  switch (spec.verb) {
    case GuiVerb::kMoveTo:
    case GuiVerb::kDragTo:
    case GuiVerb::kClick:
    case GuiVerb::kRightClick:
    case GuiVerb::kMiddleClick:
    case GuiVerb::kDoubleClick:
    case GuiVerb::kTripleClick:
    case GuiVerb::kMouseDown:
    case GuiVerb::kMouseUp: {
      std::optional<RawPoint> raw;
      int consumed = TakePoint(args, &raw);
      if (consumed < 0) {
        *error = "expected numeric x, y";
        return std::nullopt;
      }
      const bool requires_point =
          spec.verb == GuiVerb::kMoveTo || spec.verb == GuiVerb::kDragTo;
      if (!raw && requires_point) {
        *error = std::string(ToString(spec.verb)) + " requires x, y";
        return std::nullopt;
      }
      if (raw) cmd.point = map(*raw, diags);
      if (spec.verb == GuiVerb::kDoubleClick) cmd.clicks = 2;
      if (spec.verb == GuiVerb::kTripleClick) cmd.clicks = 3;
      if (spec.verb == GuiVerb::kRightClick) cmd.button = MouseButton::kRight;
      if (spec.verb == GuiVerb::kMiddleClick) cmd.button = MouseButton::kMiddle;
      // Trailing positionals: click(x, y, clicks, ...); mouseDown(x, y, button).
      for (size_t k = static_cast<size_t>(consumed); k < pos.size(); ++k) {
        if (auto b = ArgAsButton(pos[k])) {
          cmd.button = *b;
        } else if (spec.verb == GuiVerb::kClick && k == static_cast<size_t>(consumed) &&
                   pos[k].kind == Arg::kNumber) {
          cmd.clicks = static_cast<int>(pos[k].number);
        }
      }
      if (const Arg* b = args.Keyword("button")) {
        auto parsed = ArgAsButton(*b);
        if (!parsed) {
          *error = "unknown mouse button";
          return std::nullopt;
        }
        cmd.button = *parsed;
      }
      if (const Arg* c = args.Keyword("clicks")) {
        double n;
        if (!ArgAsNumber(*c, &n)) {
          *error = "clicks must be a number";
          return std::nullopt;
        }
        cmd.clicks = static_cast<int>(n);
      }
      if (cmd.clicks < 1 || cmd.clicks > 100) {
        *error = "clicks out of range";
        return std::nullopt;
      }
      return cmd;
    }
    case GuiVerb::kMoveRel:
    case GuiVerb::kDragRel: {
      RawPoint d;
      bool ok = false;
      if (!pos.empty() && pos[0].kind == Arg::kSeq && pos[0].items.size() == 2) {
        ok = ArgAsNumber(pos[0].items[0], &d.x) && ArgAsNumber(pos[0].items[1], &d.y);
      } else if (pos.size() >= 2) {
        ok = ArgAsNumber(pos[0], &d.x) && ArgAsNumber(pos[1], &d.y);
      } else {
        const Arg* kx = args.Keyword("xOffset");
        const Arg* ky = args.Keyword("yOffset");
        ok = kx && ky && ArgAsNumber(*kx, &d.x) && ArgAsNumber(*ky, &d.y);
      }
      if (!ok || !std::isfinite(d.x) || !std::isfinite(d.y) ||
          std::fabs(d.x) > 1e6 || std::fabs(d.y) > 1e6) {
        *error = "expected numeric offsets";
        return std::nullopt;
      }
      cmd.offset = PixelPoint{static_cast<int>(std::round(d.x)),
                              static_cast<int>(std::round(d.y))};
      if (const Arg* b = args.Keyword("button")) cmd.button = ArgAsButton(*b);
      return cmd;
    }
    case GuiVerb::kScroll: {
      double amount;
      const Arg* kc = args.Keyword("clicks");
      if (!pos.empty() && ArgAsNumber(pos[0], &amount)) {
      } else if (kc && ArgAsNumber(*kc, &amount)) {
      } else {
        *error = "scroll requires an amount";
        return std::nullopt;
      }
      if (!std::isfinite(amount) || std::fabs(amount) > 1e6) {
        *error = "scroll amount out of range";
        return std::nullopt;
      }
      cmd.amount = static_cast<int>(std::round(amount));
      cmd.horizontal = spec.horizontal;
      ArgList rest;
      rest.positional.assign(pos.begin() + (pos.empty() ? 0 : 1), pos.end());
      rest.keyword = args.keyword;
      std::optional<RawPoint> raw;
      if (TakePoint(rest, &raw) >= 0 && raw) cmd.point = map(*raw, diags);
      return cmd;
    }
    case GuiVerb::kTypewrite: {
      const Arg* msg = !pos.empty() ? &pos[0] : args.Keyword("message");
      if (!msg) {
        *error = "typewrite requires text";
        return std::nullopt;
      }
      if (msg->kind == Arg::kString) {
        cmd.text = msg->text;
        return cmd;
      }
      cmd.keys = ArgAsKeys(*msg);
      if (cmd.keys.empty()) {
        *error = "typewrite requires a string or list of keys";
        return std::nullopt;
      }
      return cmd;
    }
    case GuiVerb::kHotkey: {
      for (const auto& a : pos) {
        if (a.kind != Arg::kString) {
          *error = "hotkey keys must be strings";
          return std::nullopt;
        }
        cmd.keys.push_back(a.text);
      }
      if (cmd.keys.empty()) {
        *error = "hotkey requires keys";
        return std::nullopt;
      }
      return cmd;
    }
    case GuiVerb::kPress: {
      const Arg* keys = !pos.empty() ? &pos[0] : args.Keyword("keys");
      if (keys) cmd.keys = ArgAsKeys(*keys);
      if (cmd.keys.empty()) {
        *error = "press requires a key";
        return std::nullopt;
      }
      if (const Arg* n = args.Keyword("presses")) {
        double presses;
        if (!ArgAsNumber(*n, &presses) || presses < 1 || presses > 100) {
          *error = "presses out of range";
          return std::nullopt;
        }
        std::vector<std::string> repeated;
        for (int k = 0; k < static_cast<int>(presses); ++k) {
          repeated.insert(repeated.end(), cmd.keys.begin(), cmd.keys.end());
        }
        cmd.keys = std::move(repeated);
      }
      return cmd;
    }
  }
  *error = "unsupported verb";
  return std::nullopt;
}

ScriptParse ParseScript(std::string_view code, const SomMap* som,
                        const CoordMapper& map) {
  ScriptParse parse;
  std::string substituted = SubstituteTags(code, som, &parse);
  for (const auto& stmt : SplitStatements(substituted)) {
    auto call = ParseCall(stmt);
    if (!call) continue;
    auto verb = LookupVerb(call->verb);
    if (!verb) continue;
    try {
      ArgParser ap(call->args);
      ArgList args = ap.ParseList();
      std::string error;
      auto cmd = BuildCommand(*verb, args, map, &parse.diagnostics, &error);
      if (cmd) {
        parse.commands.push_back(std::move(*cmd));
      } else {
        parse.diagnostics.push_back("skipped '" + stmt + "': " + error);
      }
    } catch (const ArgError& e) {
      parse.diagnostics.push_back("skipped '" + stmt + "': " + e.message);
    }
  }
  return parse;
}

// True when every statement is a GUI call or ignorable, and at least one is
// a GUI call.
bool IsGuiOnly(std::string_view code) {
  size_t gui = 0;
  for (const auto& stmt : SplitStatements(code)) {
    if (IsIgnorable(stmt)) continue;
    auto call = ParseCall(stmt);
    if (call && LookupVerb(call->verb)) {
      ++gui;
      continue;
    }
    return false;
  }
  return gui > 0;
}

int ClampAxis(double v, int dim, const char* axis,
              std::vector<std::string>* diags) {
  if (std::isnan(v)) {
    if (diags) diags->push_back(std::string(axis) + " is not a number; using 0");
    return 0;
  }
  if (v < 0) {
    if (diags) diags->push_back(std::string("negative ") + axis + " clamped to 0");
    return 0;
  }
  const double max = static_cast<double>(dim - 1);
  if (v > max) {
    if (diags) {
      diags->push_back(std::string(axis) + " out of bounds; clamped to " +
                       std::to_string(dim - 1));
    }
    return dim - 1;
  }
  return static_cast<int>(v);
}

CoordMapper PixelMapper(Resolution res) {
  return [res](RawPoint p, std::vector<std::string>* diags) {
    return PixelPoint{ClampAxis(std::round(p.x), res.width, "x", diags),
                      ClampAxis(std::round(p.y), res.height, "y", diags)};
  };
}

CoordMapper ScaleMapper(CoordinateScale scale, Resolution res) {
  return [scale, res](RawPoint p, std::vector<std::string>* diags) {
    return NormalizeCoords(p, scale, res, diags);
  };
}

Action Noop(std::string_view raw, std::vector<std::string> diags,
            std::string reason) {
  Action a;
  a.kind = ActionKind::kNoop;
  a.raw = std::string(raw);
  a.diagnostics = std::move(diags);
  a.diagnostics.push_back(std::move(reason));
  return a;
}

Value ParseApiArgs(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return Map{};
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (!j.is_discarded()) {
    if (j.is_object()) return FromJson(j);
    return Map{{"args", FromJson(j)}};
  }
  return Map{{"raw", std::string(text)}};
}

Action SpecialAction(std::string_view raw, const std::string& body,
                     std::vector<std::string> diags) {
  Action a;
  a.raw = std::string(raw);
  a.diagnostics = std::move(diags);
  if (body == "DONE") {
    a.kind = ActionKind::kDone;
  } else if (body == "FAIL") {
    a.kind = ActionKind::kFail;
  } else if (body.substr(0, 4) == "WAIT") {
    a.kind = ActionKind::kWait;
    std::string_view arg = Trim(std::string_view(body).substr(4));
    if (!arg.empty()) {
      double n = 0;
      ParseWholeNumber(arg, n);
      if (!(n > 0)) {
        return Noop(raw, std::move(a.diagnostics), "WAIT requires n > 0");
      }
      a.wait_seconds = n;
    }
  } else if (body.substr(0, 3) == "ANS") {
    a.kind = ActionKind::kAnswer;
    a.answer_text = std::string(Trim(std::string_view(body).substr(3)));
  } else {
    std::string_view rest = Trim(std::string_view(body).substr(3));
    if (rest.size() >= 2 && rest.front() == '[' && rest.back() == ']') {
      rest = Trim(rest.substr(1, rest.size() - 2));
    }
    size_t end = 0;
    while (end < rest.size() && kWs.find(rest[end]) == std::string_view::npos &&
           rest[end] != ',') {
      ++end;
    }
    a.kind = ActionKind::kApiCall;
    a.api_name = std::string(rest.substr(0, end));
    std::string_view tail = Trim(rest.substr(end));
    if (!tail.empty() && tail.front() == ',') tail.remove_prefix(1);
    a.api_args = ParseApiArgs(tail);
  }
  return a;
}

const Segment* FirstOf(const Segments& segs, SegmentKind kind) {
  for (const auto& s : segs.segments) {
    if (s.kind == kind) return &s;
  }
  return nullptr;
}

}  // namespace

Segments ExtractSegments(std::string_view raw) {
  Segments out;
  auto push_prose = [&](std::string_view text) {
    if (text.empty()) return;
    if (!out.segments.empty() && out.segments.back().kind == SegmentKind::kProse) {
      out.segments.back().text += text;
      out.segments.back().body += text;
      return;
    }
    out.segments.push_back({SegmentKind::kProse, std::string(text), std::string(text)});
  };
  size_t pos = 0;
  while (pos < raw.size()) {
    size_t open = raw.find(kFence, pos);
    if (open == std::string_view::npos) {
      push_prose(raw.substr(pos));
      break;
    }
    push_prose(raw.substr(pos, open - pos));
    size_t close = raw.find(kFence, open + kFence.size());
    if (close == std::string_view::npos) {
      out.diagnostics.push_back("unclosed code fence at offset " +
                                std::to_string(open));
      push_prose(raw.substr(open));
      break;
    }
    std::string_view inner =
        raw.substr(open + kFence.size(), close - open - kFence.size());
    Segment seg;
    seg.text = std::string(raw.substr(open, close + kFence.size() - open));
    if (auto special = SpecialBody(inner)) {
      seg.kind = SegmentKind::kSpecial;
      seg.body = *special;
    } else {
      seg.kind = SegmentKind::kCodeBlock;
      size_t nl = inner.find('\n');
      if (nl != std::string_view::npos && IsLanguageTag(inner.substr(0, nl))) {
        seg.body = std::string(inner.substr(nl + 1));
      } else {
        seg.body = std::string(inner);
      }
    }
    out.segments.push_back(std::move(seg));
    pos = close + kFence.size();
  }
  return out;
}

std::span<const GrounderProfile> BuiltinGrounderProfiles() {
  static const GrounderProfile kProfiles[] = {
      {"os-atlas", CoordinateScale::kPermille, GrounderDialect::kPointTag},
      {"uground", CoordinateScale::kPermille, GrounderDialect::kBareCoordinate},
      {"ui-tars", CoordinateScale::kPermille, GrounderDialect::kBareCoordinate},
      {"internvl", CoordinateScale::kUnit, GrounderDialect::kVerbScript},
  };
  return kProfiles;
}

const GrounderProfile* FindGrounderProfile(std::string_view name) {
  for (const auto& p : BuiltinGrounderProfiles()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

PixelPoint NormalizeCoords(RawPoint p, CoordinateScale scale, Resolution res,
                           std::vector<std::string>* diagnostics) {
  auto axis = [&](double v, int dim, const char* name) {
    if (std::isnan(v)) return ClampAxis(v, dim, name, diagnostics);
    if (v < 0) return ClampAxis(v, dim, name, diagnostics);
    double fraction = scale == CoordinateScale::kUnit ? v : v / 1000.0;
    double scaled = std::round(fraction * dim);  // ties away from zero
    return ClampAxis(scaled, dim, name, diagnostics);
  };
  return {axis(p.x, res.width, "x"), axis(p.y, res.height, "y")};
}

std::vector<GuiCommand> ParseGuiScript(std::string_view code, const SomMap* som,
                                       Resolution res,
                                       std::vector<std::string>* diagnostics) {
  ScriptParse parse = ParseScript(code, som, PixelMapper(res));
  if (diagnostics) {
    diagnostics->insert(diagnostics->end(), parse.diagnostics.begin(),
                        parse.diagnostics.end());
  }
  return std::move(parse.commands);
}

Action ParseModelOutput(std::string_view raw, const SomMap* som,
                        Interface interface, Resolution res) {
  Segments segs = ExtractSegments(raw);
  std::vector<std::string> diags = std::move(segs.diagnostics);

  if (const Segment* special = FirstOf(segs, SegmentKind::kSpecial)) {
    return SpecialAction(raw, special->body, std::move(diags));
  }
  const Segment* block = FirstOf(segs, SegmentKind::kCodeBlock);
  if (!block) return Noop(raw, std::move(diags), "no code block or special code");

  size_t blocks = std::count_if(segs.segments.begin(), segs.segments.end(),
                                [](const Segment& s) {
                                  return s.kind == SegmentKind::kCodeBlock;
                                });
  if (blocks > 1) {
    diags.push_back("ignored " + std::to_string(blocks - 1) +
                    " additional code block(s)");
  }

  if (IsGuiOnly(block->body)) {
    if (interface == Interface::kCli) {
      return Noop(raw, std::move(diags),
                  "GUI actions are not available on a CLI-only task");
    }
    ScriptParse parse = ParseScript(block->body, som, PixelMapper(res));
    diags.insert(diags.end(), parse.diagnostics.begin(), parse.diagnostics.end());
    if (parse.tag_error) {
      return Noop(raw, std::move(diags), "SoM tag substitution failed");
    }
    if (parse.commands.empty()) {
      return Noop(raw, std::move(diags), "no executable GUI command");
    }
    Action a;
    a.kind = ActionKind::kGuiScript;
    a.gui_commands = std::move(parse.commands);
    a.raw = std::string(raw);
    a.diagnostics = std::move(diags);
    return a;
  }

  std::string_view code = Trim(block->body);
  if (code.empty()) return Noop(raw, std::move(diags), "empty code block");
  if (interface == Interface::kGui) {
    return Noop(raw, std::move(diags),
                "code execution is not available on a GUI-only task");
  }
  Action a;
  a.kind = ActionKind::kCliCode;
  a.code = std::string(code);
  a.raw = std::string(raw);
  a.diagnostics = std::move(diags);
  return a;
}

bool IsDirectPrimitive(std::string_view raw) {
  Segments segs = ExtractSegments(raw);
  if (FirstOf(segs, SegmentKind::kSpecial)) return true;
  const Segment* block = FirstOf(segs, SegmentKind::kCodeBlock);
  return block && !Trim(block->body).empty() && !IsGuiOnly(block->body);
}

namespace {

std::optional<GuiCommand> ScanPointTag(std::string_view text, size_t at,
                                       const GrounderProfile& profile,
                                       Resolution res,
                                       std::vector<std::string>* diags) {
  size_t i = at;
  if (Consume(text, i, "CLICK")) {
    SkipWs(text, i);
    const bool tagged = Consume(text, i, "<point>");
    SkipWs(text, i);
    RawPoint p;
    if (!Consume(text, i, "[[")) return std::nullopt;
    SkipWs(text, i);
    if (!ScanNumber(text, i, p.x)) return std::nullopt;
    SkipWs(text, i);
    if (!Consume(text, i, ",")) return std::nullopt;
    SkipWs(text, i);
    if (!ScanNumber(text, i, p.y)) return std::nullopt;
    SkipWs(text, i);
    if (!Consume(text, i, "]]")) return std::nullopt;
    SkipWs(text, i);
    if (tagged && !Consume(text, i, "</point>")) return std::nullopt;
    GuiCommand cmd;
    cmd.verb = GuiVerb::kClick;
    cmd.point = NormalizeCoords(p, profile.scale, res, diags);
    return cmd;
  }
  if (Consume(text, i, "TYPE")) {
    SkipWs(text, i);
    if (!Consume(text, i, "[")) return std::nullopt;
    size_t eol = text.find('\n', i);
    std::string_view line = text.substr(i, eol == std::string_view::npos
                                               ? std::string_view::npos
                                               : eol - i);
    size_t close = line.rfind(']');
    if (close == std::string_view::npos) return std::nullopt;
    GuiCommand cmd;
    cmd.verb = GuiVerb::kTypewrite;
    cmd.text = std::string(line.substr(0, close));
    return cmd;
  }
  if (Consume(text, i, "SCROLL")) {
    SkipWs(text, i);
    if (!Consume(text, i, "[")) return std::nullopt;
    SkipWs(text, i);
    GuiCommand cmd;
    cmd.verb = GuiVerb::kScroll;
    if (Consume(text, i, "UP")) {
      cmd.amount = kGrounderScrollClicks;
    } else if (Consume(text, i, "DOWN")) {
      cmd.amount = -kGrounderScrollClicks;
    } else if (Consume(text, i, "LEFT")) {
      cmd.amount = -kGrounderScrollClicks;
      cmd.horizontal = true;
    } else if (Consume(text, i, "RIGHT")) {
      cmd.amount = kGrounderScrollClicks;
      cmd.horizontal = true;
    } else {
      return std::nullopt;
    }
    SkipWs(text, i);
    if (!Consume(text, i, "]")) return std::nullopt;
    return cmd;
  }
  return std::nullopt;
}

std::optional<GuiCommand> ScanBareCoordinate(std::string_view text, size_t at,
                                             const GrounderProfile& profile,
                                             Resolution res,
                                             std::vector<std::string>* diags) {
  size_t i = at;
  if (!Consume(text, i, "(")) return std::nullopt;
  RawPoint p;
  SkipWs(text, i);
  if (!ScanNumber(text, i, p.x)) return std::nullopt;
  SkipWs(text, i);
  if (!Consume(text, i, ",")) return std::nullopt;
  SkipWs(text, i);
  if (!ScanNumber(text, i, p.y)) return std::nullopt;
  SkipWs(text, i);
  if (!Consume(text, i, ")")) return std::nullopt;
  GuiCommand cmd;
  cmd.verb = GuiVerb::kClick;
  cmd.point = NormalizeCoords(p, profile.scale, res, diags);
  return cmd;
}

}  // namespace

Action ParseGrounderOutput(std::string_view text,
                           const GrounderProfile& profile, Resolution res) {
  std::vector<std::string> diags;
  auto gui = [&](std::vector<GuiCommand> cmds) {
    Action a;
    a.kind = ActionKind::kGuiScript;
    a.gui_commands = std::move(cmds);
    a.raw = std::string(text);
    a.diagnostics = std::move(diags);
    return a;
  };
  switch (profile.dialect) {
    case GrounderDialect::kPointTag:
      for (size_t i = 0; i < text.size(); ++i) {
        if (auto cmd = ScanPointTag(text, i, profile, res, &diags)) {
          return gui({std::move(*cmd)});
        }
      }
      break;
    case GrounderDialect::kBareCoordinate:
      for (size_t i = text.find('('); i != std::string_view::npos;
           i = text.find('(', i + 1)) {
        if (auto cmd = ScanBareCoordinate(text, i, profile, res, &diags)) {
          return gui({std::move(*cmd)});
        }
      }
      break;
    case GrounderDialect::kVerbScript: {
      Segments segs = ExtractSegments(text);
      if (const Segment* special = FirstOf(segs, SegmentKind::kSpecial)) {
        return SpecialAction(text, special->body, std::move(segs.diagnostics));
      }
      const Segment* block = FirstOf(segs, SegmentKind::kCodeBlock);
      std::string_view body = block ? std::string_view(block->body) : text;
      ScriptParse parse =
          ParseScript(body, nullptr, ScaleMapper(profile.scale, res));
      diags.insert(diags.end(), parse.diagnostics.begin(), parse.diagnostics.end());
      if (!parse.commands.empty() && !parse.tag_error) {
        return gui(std::move(parse.commands));
      }
      break;
    }
  }
  return Noop(text, std::move(diags),
              "grounder output matched no '" + profile.name + "' dialect");
}

}  // namespace deskbench
