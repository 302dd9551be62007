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

#include "deskbench/dsl/expr.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace deskbench::dsl {

SyntaxError::SyntaxError(std::string message, size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      message_(std::move(message)),
      position_(position) {}

enum class NodeKind {
  kLiteral,
  kParam,
  kList,
  kNeg,
  kNot,
  kAnd,
  kOr,
  kCompare,
  kArith,
  kIndex,
  kMethod,
  kCall,
};

enum class Builtin { kLen, kAbs, kMin, kMax, kSortedLines };
enum class Method { kEndsWith, kStartsWith, kStrip, kLower };

struct Node {
  NodeKind kind;
  size_t begin = 0;
  size_t end = 0;
  Value literal;
  size_t param = 0;
  // Operators for kArith ("+-*/") and kCompare (one per adjacent pair).
  std::vector<std::string> ops;
  Builtin builtin = Builtin::kLen;
  Method method = Method::kStrip;
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

enum class Tok { kEnd, kNumber, kString, kIdent, kPunct };

struct Token {
  Tok type;
  std::string text;
  double number = 0;
  size_t pos = 0;
};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> Tokenize(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[i])) ||
              src[i] == '.')) {
        ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          i = j;
          while (i < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[i]))) {
            ++i;
          }
        }
      }
      std::string text(src.substr(start, i - start));
      char* endp = nullptr;
      double d = std::strtod(text.c_str(), &endp);
      if (endp != text.c_str() + text.size()) {
        throw SyntaxError("malformed number '" + text + "'", start);
      }
      out.push_back({Tok::kNumber, std::move(text), d, start});
      continue;
    }
    if (c == '\'' || c == '"') {
      const char quote = c;
      ++i;
      std::string text;
      bool closed = false;
      while (i < src.size()) {
        char ch = src[i];
        if (ch == quote) {
          closed = true;
          ++i;
          break;
        }
        if (ch == '\\' && i + 1 < src.size()) {
          char esc = src[i + 1];
          switch (esc) {
            case 'n':
              text += '\n';
              break;
            case 't':
              text += '\t';
              break;
            case 'r':
              text += '\r';
              break;
            case '0':
              text += '\0';
              break;
            default:
              text += esc;
          }
          i += 2;
          continue;
        }
        text += ch;
        ++i;
      }
      if (!closed) throw SyntaxError("unterminated string", start);
      out.push_back({Tok::kString, std::move(text), 0, start});
      continue;
    }
    if (IsIdentStart(c)) {
      while (i < src.size() && IsIdentChar(src[i])) ++i;
      out.push_back({Tok::kIdent, std::string(src.substr(start, i - start)),
                     0, start});
      continue;
    }
    static constexpr std::string_view kTwoChar[] = {"==", "!=", "<=", ">="};
    bool matched = false;
    for (auto op : kTwoChar) {
      if (src.substr(i, 2) == op) {
        out.push_back({Tok::kPunct, std::string(op), 0, start});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("()[],:.+-*/<>").find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), 0, start});
      ++i;
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::kEnd, "", 0, src.size()});
  return out;
}

bool IsKeyword(std::string_view s) {
  static constexpr std::string_view kKeywords[] = {
      "lambda", "and", "or", "not", "true", "false",
      "True",   "False", "null", "None"};
  return std::find(std::begin(kKeywords), std::end(kKeywords), s) !=
         std::end(kKeywords);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(Tokenize(src)) {}

  std::pair<std::vector<std::string>, NodePtr> ParseLambda() {
    if (!IsIdent("lambda")) {
      throw SyntaxError("expected 'lambda'", Peek().pos);
    }
    Advance();
    for (;;) {
      const Token& t = Peek();
      if (t.type != Tok::kIdent || IsKeyword(t.text)) {
        throw SyntaxError("expected parameter name", t.pos);
      }
      if (std::find(params_.begin(), params_.end(), t.text) != params_.end()) {
        throw SyntaxError("duplicate parameter '" + t.text + "'", t.pos);
      }
      params_.push_back(t.text);
      Advance();
      if (IsPunct(",")) {
        Advance();
        continue;
      }
      if (IsPunct(":")) {
        Advance();
        break;
      }
      throw SyntaxError("expected ':' or ',' after params", Peek().pos);
    }
    NodePtr body = ParseOr();
    if (Peek().type != Tok::kEnd) {
      throw SyntaxError("unexpected '" + Peek().text + "'", Peek().pos);
    }
    return {params_, body};
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  void Advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  size_t PrevEnd() const {
    if (pos_ == 0) return 0;
    const Token& t = toks_[pos_ - 1];
    if (t.type == Tok::kString) {
      // Scan to the closing quote; escapes make text length unreliable.
      size_t i = t.pos + 1;
      const char quote = src_[t.pos];
      while (i < src_.size() && src_[i] != quote) i += src_[i] == '\\' ? 2 : 1;
      return std::min(i + 1, src_.size());
    }
    return t.pos + t.text.size();
  }
  bool IsPunct(std::string_view p) const {
    return Peek().type == Tok::kPunct && Peek().text == p;
  }
  bool IsIdent(std::string_view name) const {
    return Peek().type == Tok::kIdent && Peek().text == name;
  }
  void Expect(std::string_view p) {
    if (!IsPunct(p)) {
      throw SyntaxError("expected '" + std::string(p) + "'", Peek().pos);
    }
    Advance();
  }

  NodePtr Make(NodeKind kind, size_t begin,
               std::vector<NodePtr> children = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->begin = begin;
    n->end = PrevEnd();
    n->children = std::move(children);
    return n;
  }

  NodePtr ParseOr() {
    size_t begin = Peek().pos;
    NodePtr lhs = ParseAnd();
    while (IsIdent("or")) {
      Advance();
      NodePtr rhs = ParseAnd();
      lhs = Make(NodeKind::kOr, begin, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr ParseAnd() {
    size_t begin = Peek().pos;
    NodePtr lhs = ParseNot();
    while (IsIdent("and")) {
      Advance();
      NodePtr rhs = ParseNot();
      lhs = Make(NodeKind::kAnd, begin, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr ParseNot() {
    size_t begin = Peek().pos;
    if (IsIdent("not")) {
      Advance();
      NodePtr operand = ParseNot();
      return Make(NodeKind::kNot, begin, {operand});
    }
    return ParseComparison();
  }

  static bool IsCompareOp(const Token& t) {
    if (t.type != Tok::kPunct) return false;
    return t.text == "==" || t.text == "!=" || t.text == "<" ||
           t.text == "<=" || t.text == ">" || t.text == ">=";
  }

  NodePtr ParseComparison() {
    size_t begin = Peek().pos;
    NodePtr first = ParseAdditive();
    if (!IsCompareOp(Peek())) return first;
    std::vector<NodePtr> operands{first};
    std::vector<std::string> ops;
    while (IsCompareOp(Peek())) {
      ops.push_back(Peek().text);
      Advance();
      operands.push_back(ParseAdditive());
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::kCompare;
    n->begin = begin;
    n->end = PrevEnd();
    n->ops = std::move(ops);
    n->children = std::move(operands);
    return n;
  }

  NodePtr ParseAdditive() {
    size_t begin = Peek().pos;
    NodePtr lhs = ParseMultiplicative();
    while (IsPunct("+") || IsPunct("-")) {
      std::string op = Peek().text;
      Advance();
      NodePtr rhs = ParseMultiplicative();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kArith;
      n->begin = begin;
      n->end = PrevEnd();
      n->ops = {op};
      n->children = {lhs, rhs};
      lhs = n;
    }
    return lhs;
  }

  NodePtr ParseMultiplicative() {
    size_t begin = Peek().pos;
    NodePtr lhs = ParseUnary();
    while (IsPunct("*") || IsPunct("/")) {
      std::string op = Peek().text;
      Advance();
      NodePtr rhs = ParseUnary();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kArith;
      n->begin = begin;
      n->end = PrevEnd();
      n->ops = {op};
      n->children = {lhs, rhs};
      lhs = n;
    }
    return lhs;
  }

  NodePtr ParseUnary() {
    size_t begin = Peek().pos;
    if (IsPunct("-")) {
      Advance();
      NodePtr operand = ParseUnary();
      return Make(NodeKind::kNeg, begin, {operand});
    }
    return ParsePostfix();
  }

  NodePtr ParsePostfix() {
    size_t begin = Peek().pos;
    NodePtr base = ParseAtom();
    for (;;) {
      if (IsPunct("[")) {
        Advance();
        NodePtr index = ParseOr();
        Expect("]");
        base = Make(NodeKind::kIndex, begin, {base, index});
        continue;
      }
      if (IsPunct(".")) {
        Advance();
        const Token& name = Peek();
        if (name.type != Tok::kIdent) {
          throw SyntaxError("expected method name", name.pos);
        }
        Method m;
        size_t want_args;
        if (name.text == "endswith") {
          m = Method::kEndsWith;
          want_args = 1;
        } else if (name.text == "startswith") {
          m = Method::kStartsWith;
          want_args = 1;
        } else if (name.text == "strip") {
          m = Method::kStrip;
          want_args = 0;
        } else if (name.text == "lower") {
          m = Method::kLower;
          want_args = 0;
        } else {
          throw SyntaxError("unknown method '" + name.text + "'", name.pos);
        }
        const size_t name_pos = name.pos;
        const std::string method_name = name.text;
        Advance();
        std::vector<NodePtr> children{base};
        auto args = ParseCallArgs();
        if (args.size() != want_args) {
          throw SyntaxError("method '" + method_name + "' takes " +
                                std::to_string(want_args) + " argument(s)",
                            name_pos);
        }
        children.insert(children.end(), args.begin(), args.end());
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::kMethod;
        n->begin = begin;
        n->end = PrevEnd();
        n->method = m;
        n->children = std::move(children);
        base = n;
        continue;
      }
      return base;
    }
  }

  std::vector<NodePtr> ParseCallArgs() {
    Expect("(");
    std::vector<NodePtr> args;
    if (IsPunct(")")) {
      Advance();
      return args;
    }
    for (;;) {
      args.push_back(ParseOr());
      if (IsPunct(",")) {
        Advance();
        continue;
      }
      Expect(")");
      return args;
    }
  }

  NodePtr ParseAtom() {
    const Token t = Peek();
    const size_t begin = t.pos;
    switch (t.type) {
      case Tok::kEnd:
        throw SyntaxError("unexpected end of input", t.pos);
      case Tok::kNumber: {
        Advance();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::kLiteral;
        n->begin = begin;
        n->end = PrevEnd();
        n->literal = t.number;
        return n;
      }
      case Tok::kString: {
        Advance();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::kLiteral;
        n->begin = begin;
        n->end = PrevEnd();
        n->literal = t.text;
        return n;
      }
      case Tok::kPunct: {
        if (t.text == "(") {
          Advance();
          NodePtr inner = ParseOr();
          Expect(")");
          return inner;
        }
        if (t.text == "[") {
          Advance();
          std::vector<NodePtr> items;
          if (!IsPunct("]")) {
            for (;;) {
              items.push_back(ParseOr());
              if (IsPunct(",")) {
                Advance();
                if (IsPunct("]")) break;
                continue;
              }
              break;
            }
          }
          Expect("]");
          return Make(NodeKind::kList, begin, std::move(items));
        }
        throw SyntaxError("unexpected '" + t.text + "'", t.pos);
      }
      case Tok::kIdent:
        break;
    }
    const std::string& id = t.text;
    auto literal = [&](Value v) {
      Advance();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kLiteral;
      n->begin = begin;
      n->end = PrevEnd();
      n->literal = std::move(v);
      return n;
    };
    if (id == "true" || id == "True") return literal(true);
    if (id == "false" || id == "False") return literal(false);
    if (id == "null" || id == "None") return literal(Value());
    if (IsKeyword(id)) throw SyntaxError("unexpected '" + id + "'", t.pos);

    auto p = std::find(params_.begin(), params_.end(), id);
    if (p != params_.end()) {
      Advance();
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kParam;
      n->begin = begin;
      n->end = PrevEnd();
      n->param = static_cast<size_t>(p - params_.begin());
      return n;
    }
    if (Peek(1).type == Tok::kPunct && Peek(1).text == "(") {
      Builtin b;
      size_t min_args = 1;
      size_t max_args = 1;
      if (id == "len") {
        b = Builtin::kLen;
      } else if (id == "abs") {
        b = Builtin::kAbs;
      } else if (id == "min") {
        b = Builtin::kMin;
        max_args = SIZE_MAX;
      } else if (id == "max") {
        b = Builtin::kMax;
        max_args = SIZE_MAX;
      } else if (id == "sorted_lines") {
        b = Builtin::kSortedLines;
      } else {
        throw SyntaxError("unknown builtin '" + id + "'", t.pos);
      }
      Advance();
      auto args = ParseCallArgs();
      if (args.size() < min_args || args.size() > max_args) {
        throw SyntaxError("wrong number of arguments to '" + id + "'", t.pos);
      }
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kCall;
      n->begin = begin;
      n->end = PrevEnd();
      n->builtin = b;
      n->children = std::move(args);
      return n;
    }
    throw SyntaxError("unknown identifier '" + id + "'", t.pos);
  }

  std::string_view src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::string> params_;
};

// Internal unwinding carrier; never escapes Evaluate().
struct FaultSignal {
  const Node* node;
  std::string message;
};

class Evaluator {
 public:
  Evaluator(std::span<const Value> args) : args_(args) {}

  Value Eval(const Node& n) {
    switch (n.kind) {
      case NodeKind::kLiteral:
        return n.literal;
      case NodeKind::kParam:
        return args_[n.param];
      case NodeKind::kList: {
        List out;
        out.reserve(n.children.size());
        for (const auto& c : n.children) out.push_back(Eval(*c));
        return out;
      }
      case NodeKind::kNeg: {
        Value v = Eval(*n.children[0]);
        if (!v.is_number()) Throw(n, "unary '-' on " + Kind(v));
        return -v.as_number();
      }
      case NodeKind::kNot:
        return !Truthy(Eval(*n.children[0]));
      case NodeKind::kAnd:
        return Truthy(Eval(*n.children[0])) && Truthy(Eval(*n.children[1]));
      case NodeKind::kOr:
        return Truthy(Eval(*n.children[0])) || Truthy(Eval(*n.children[1]));
      case NodeKind::kCompare:
        return EvalCompare(n);
      case NodeKind::kArith:
        return EvalArith(n);
      case NodeKind::kIndex:
        return EvalIndex(n);
      case NodeKind::kMethod:
        return EvalMethod(n);
      case NodeKind::kCall:
        return EvalCall(n);
    }
    Throw(n, "unknown node");
  }

 private:
  [[noreturn]] static void Throw(const Node& n, std::string message) {
    throw FaultSignal{&n, std::move(message)};
  }
  static std::string Kind(const Value& v) { return ToString(v.kind()); }

  Value EvalCompare(const Node& n) {
    Value lhs = Eval(*n.children[0]);
    for (size_t i = 0; i < n.ops.size(); ++i) {
      Value rhs = Eval(*n.children[i + 1]);
      const std::string& op = n.ops[i];
      bool result;
      if (op == "==") {
        result = lhs == rhs;
      } else if (op == "!=") {
        result = !(lhs == rhs);
      } else {
        int cmp;
        if (lhs.is_number() && rhs.is_number()) {
          double a = lhs.as_number();
          double b = rhs.as_number();
          if (std::isnan(a) || std::isnan(b)) return false;
          cmp = a < b ? -1 : (a > b ? 1 : 0);
        } else if (lhs.is_string() && rhs.is_string()) {
          int c = lhs.as_string().compare(rhs.as_string());
          cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
        } else {
          Throw(n, "cannot order " + Kind(lhs) + " and " + Kind(rhs));
        }
        if (op == "<") {
          result = cmp < 0;
        } else if (op == "<=") {
          result = cmp <= 0;
        } else if (op == ">") {
          result = cmp > 0;
        } else {
          result = cmp >= 0;
        }
      }
      if (!result) return false;
      lhs = std::move(rhs);
    }
    return true;
  }

  Value EvalArith(const Node& n) {
    Value a = Eval(*n.children[0]);
    Value b = Eval(*n.children[1]);
    const char op = n.ops[0][0];
    if (a.is_number() && b.is_number()) {
      const double x = a.as_number();
      const double y = b.as_number();
      switch (op) {
        case '+':
          return x + y;
        case '-':
          return x - y;
        case '*':
          return x * y;
        case '/':
          if (y == 0) Throw(n, "division by zero");
          return x / y;
      }
    }
    if (op == '+' && a.is_string() && b.is_string()) {
      return a.as_string() + b.as_string();
    }
    if (op == '+' && a.is_list() && b.is_list()) {
      List out = a.as_list();
      out.insert(out.end(), b.as_list().begin(), b.as_list().end());
      return out;
    }
    Throw(n, std::string("unsupported operands for '") + op + "': " +
                 Kind(a) + " and " + Kind(b));
  }

  Value EvalIndex(const Node& n) {
    Value base = Eval(*n.children[0]);
    Value index = Eval(*n.children[1]);
    if (base.is_null()) return Value();
    if (base.is_map()) {
      if (!index.is_string()) Throw(n, "map index must be a string");
      return base[index.as_string()];
    }
    if (base.is_list() || base.is_string()) {
      if (!index.is_number() ||
          index.as_number() != std::floor(index.as_number())) {
        Throw(n, "sequence index must be an integer");
      }
      const double d = index.as_number();
      if (std::fabs(d) > 9.0e15) return Value();
      const auto i = static_cast<long long>(d);
      if (base.is_list()) return base.at_index(i);
      const auto& s = base.as_string();
      long long k = i < 0 ? i + static_cast<long long>(s.size()) : i;
      if (k < 0 || k >= static_cast<long long>(s.size())) return Value();
      return std::string(1, s[static_cast<size_t>(k)]);
    }
    Throw(n, "cannot index " + Kind(base));
  }

  Value EvalMethod(const Node& n) {
    Value recv = Eval(*n.children[0]);
    if (!recv.is_string()) Throw(n, "method on " + Kind(recv));
    const std::string& s = recv.as_string();
    switch (n.method) {
      case Method::kEndsWith:
      case Method::kStartsWith: {
        Value arg = Eval(*n.children[1]);
        if (!arg.is_string()) Throw(n, "argument must be a string");
        const std::string& a = arg.as_string();
        if (a.size() > s.size()) return false;
        if (n.method == Method::kEndsWith) {
          return s.compare(s.size() - a.size(), a.size(), a) == 0;
        }
        return s.compare(0, a.size(), a) == 0;
      }
      case Method::kStrip: {
        constexpr std::string_view kWs = " \t\n\r\f\v";
        size_t b = s.find_first_not_of(kWs);
        if (b == std::string::npos) return std::string();
        size_t e = s.find_last_not_of(kWs);
        return s.substr(b, e - b + 1);
      }
      case Method::kLower: {
        std::string out = s;
        for (char& c : out) {
          if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        return out;
      }
    }
    Throw(n, "unknown method");
  }

  Value Extremum(const Node& n, List items, bool want_max) {
    if (items.empty()) Throw(n, "min/max of empty sequence");
    const bool numbers = items[0].is_number();
    if (!numbers && !items[0].is_string()) {
      Throw(n, "min/max needs numbers or strings");
    }
    size_t best = 0;
    for (size_t i = 0; i < items.size(); ++i) {
      if (items[i].is_number() != numbers ||
          (!numbers && !items[i].is_string())) {
        Throw(n, "min/max over mixed kinds");
      }
      if (i == 0) continue;
      bool better;
      if (numbers) {
        better = want_max ? items[i].as_number() > items[best].as_number()
                          : items[i].as_number() < items[best].as_number();
      } else {
        better = want_max ? items[i].as_string() > items[best].as_string()
                          : items[i].as_string() < items[best].as_string();
      }
      if (better) best = i;
    }
    return items[best];
  }

  Value EvalCall(const Node& n) {
    List args;
    args.reserve(n.children.size());
    for (const auto& c : n.children) args.push_back(Eval(*c));
    switch (n.builtin) {
      case Builtin::kLen: {
        const Value& v = args[0];
        if (v.is_string()) {
          // Count code points, not bytes.
          long long count = 0;
          for (unsigned char c : v.as_string()) count += (c & 0xC0) != 0x80;
          return static_cast<double>(count);
        }
        if (v.is_list()) return static_cast<double>(v.as_list().size());
        if (v.is_map()) return static_cast<double>(v.as_map().size());
        Throw(n, "len() of " + Kind(v));
      }
      case Builtin::kAbs:
        if (!args[0].is_number()) Throw(n, "abs() of " + Kind(args[0]));
        return std::fabs(args[0].as_number());
      case Builtin::kMin:
      case Builtin::kMax: {
        const bool want_max = n.builtin == Builtin::kMax;
        if (args.size() == 1) {
          if (!args[0].is_list()) Throw(n, "min/max of a single non-list");
          return Extremum(n, args[0].as_list(), want_max);
        }
        return Extremum(n, std::move(args), want_max);
      }
      case Builtin::kSortedLines:
        if (!args[0].is_string()) {
          Throw(n, "sorted_lines() of " + Kind(args[0]));
        }
        return SortedLines(args[0].as_string());
    }
    Throw(n, "unknown builtin");
  }

  std::span<const Value> args_;
};

}  // namespace

Expr ParseExpression(std::string_view source) {
  Parser parser(source);
  auto [params, body] = parser.ParseLambda();
  Expr e;
  e.source_ = std::string(source);
  e.params_ = std::move(params);
  e.body_ = std::move(body);
  return e;
}

bool IsLambdaSource(std::string_view source) {
  size_t b = source.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return false;
  source.remove_prefix(b);
  if (source.substr(0, 6) != "lambda") return false;
  return source.size() == 6 || !IsIdentChar(source[6]);
}

bool Truthy(const Value& v) {
  switch (v.kind()) {
    case ValueKind::kNull:
      return false;
    case ValueKind::kBool:
      return v.as_bool();
    case ValueKind::kNumber:
      return v.as_number() != 0;
    case ValueKind::kString:
      return !v.as_string().empty();
    case ValueKind::kList:
      return !v.as_list().empty();
    case ValueKind::kMap:
      return !v.as_map().empty();
  }
  return false;
}

List SortedLines(std::string_view text) {
  constexpr std::string_view kWs = " \t\n\r\f\v";
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos
                                            : nl - start);
    size_t b = line.find_first_not_of(kWs);
    if (b == std::string_view::npos) {
      lines.emplace_back();
    } else {
      size_t e = line.find_last_not_of(kWs);
      lines.emplace_back(line.substr(b, e - b + 1));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  std::sort(lines.begin(), lines.end());
  List out;
  out.reserve(lines.size());
  for (auto& l : lines) out.emplace_back(std::move(l));
  return out;
}

Outcome Evaluate(const Expr& expr, std::span<const Value> args) {
  if (args.size() != expr.arity()) {
    return {Value(),
            Fault{"expected " + std::to_string(expr.arity()) +
                      " argument(s), got " + std::to_string(args.size()),
                  expr.source()}};
  }
  try {
    Evaluator ev(args);
    return {ev.Eval(expr.body()), std::nullopt};
  } catch (const FaultSignal& f) {
    std::string sub = expr.source().substr(
        f.node->begin, f.node->end > f.node->begin ? f.node->end - f.node->begin
                                                   : 0);
    return {Value(), Fault{f.message, std::move(sub)}};
  }
}

}  // namespace deskbench::dsl
