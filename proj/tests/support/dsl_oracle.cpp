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

#include "dsl_oracle.h"

#include <algorithm>
#include <map>
#include <memory>

#include "deskbench/dsl/expr.h"

namespace deskbench::testing {

double Gen::Number() {
  switch (Int(0, 3)) {
    case 0: return static_cast<double>(Int(-50, 50));
    case 1: return static_cast<double>(Int(-2000000, 2000000)) / 8.0;
    case 2: return Real(-1e7, 1e7);
    default: return 2400000 + Real(-3, 3);
  }
}

std::string Gen::String(int max_len) {
  static constexpr char kAlphabet[] = "abcXYZ._ \t\n019";
  int n = Int(0, max_len);
  std::string s;
  for (int i = 0; i < n; ++i) s += kAlphabet[Int(0, sizeof(kAlphabet) - 2)];
  return s;
}

std::string Gen::Word(int max_len) {
  static constexpr char kAlphabet[] = "abcxyzABCXYZ_.";
  int n = Int(0, max_len);
  std::string s;
  for (int i = 0; i < n; ++i) s += kAlphabet[Int(0, sizeof(kAlphabet) - 2)];
  return s;
}

Value Gen::Any(int depth) {
  switch (Int(0, depth > 0 ? 5 : 3)) {
    case 0: return Value();
    case 1: return Int(0, 1) == 1;
    case 2: return Number();
    case 3: return String();
    case 4: {
      List l;
      for (int i = Int(0, 3); i > 0; --i) l.push_back(Any(depth - 1));
      return l;
    }
    default: {
      Map m;
      for (int i = Int(0, 3); i > 0; --i) m[Word()] = Any(depth - 1);
      return m;
    }
  }
}

double Gen::Real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int Gen::Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

namespace {

// Brute-force reference implementations, written directly over chars and
// doubles without the library helpers.

bool RefTruthy(const Value& v) {
  if (v.is_null()) return false;
  if (v.is_bool()) return v.as_bool();
  if (v.is_number()) return !(v.as_number() == 0);
  if (v.is_string()) return v.as_string().size() > 0;
  if (v.is_list()) return v.as_list().size() > 0;
  return v.as_map().size() > 0;
}

bool RefEndsWith(const std::string& s, const std::string& suffix) {
  if (suffix.size() > s.size()) return false;
  size_t off = s.size() - suffix.size();
  for (size_t i = 0; i < suffix.size(); ++i) {
    if (s[off + i] != suffix[i]) return false;
  }
  return true;
}

bool RefStartsWith(const std::string& s, const std::string& prefix) {
  if (prefix.size() > s.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (s[i] != prefix[i]) return false;
  }
  return true;
}

bool RefSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string RefStrip(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && RefSpace(s[b])) ++b;
  while (e > b && RefSpace(s[e - 1])) --e;
  return std::string(s.begin() + b, s.begin() + e);
}

std::string RefLower(const std::string& s) {
  static constexpr char kUpper[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  static constexpr char kLowerTable[] = "abcdefghijklmnopqrstuvwxyz";
  std::string out;
  for (char c : s) {
    char r = c;
    for (int i = 0; i < 26; ++i) {
      if (c == kUpper[i]) r = kLowerTable[i];
    }
    out += r;
  }
  return out;
}

Value RefSortedLines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  bool pending = false;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(RefStrip(cur));
      cur.clear();
      pending = false;
    } else {
      cur += c;
      pending = true;
    }
  }
  if (pending) lines.push_back(RefStrip(cur));
  // Insertion sort.
  for (size_t i = 1; i < lines.size(); ++i) {
    for (size_t j = i; j > 0 && lines[j] < lines[j - 1]; --j) std::swap(lines[j], lines[j - 1]);
  }
  List out;
  for (auto& l : lines) out.push_back(l);
  return out;
}

int RefCompareStrings(const std::string& a, const std::string& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    auto x = static_cast<unsigned char>(a[i]);
    auto y = static_cast<unsigned char>(b[i]);
    if (x != y) return x < y ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

bool RefOrder(const std::string& op, int cmp) {
  if (op == "<") return cmp < 0;
  if (op == "<=") return cmp <= 0;
  if (op == ">") return cmp > 0;
  return cmp >= 0;
}

int Sign(double a, double b) { return a < b ? -1 : (b < a ? 1 : 0); }

// Structural equality written as a separate recursive walk.
bool RefEqual(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  if (a.is_null()) return true;
  if (a.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_number()) return a.as_number() == b.as_number();
  if (a.is_string()) return RefCompareStrings(a.as_string(), b.as_string()) == 0;
  if (a.is_list()) {
    if (a.as_list().size() != b.as_list().size()) return false;
    for (size_t i = 0; i < a.as_list().size(); ++i) {
      if (!RefEqual(a.as_list()[i], b.as_list()[i])) return false;
    }
    return true;
  }
  if (a.as_map().size() != b.as_map().size()) return false;
  for (const auto& [k, v] : a.as_map()) {
    auto it = b.as_map().find(k);
    if (it == b.as_map().end() || !RefEqual(v, it->second)) return false;
  }
  return true;
}

// Collects divergences between the evaluator and reference values.
class Checker {
 public:
  void Expect(const std::string& source, std::vector<Value> args, const Value& expected) {
    dsl::Outcome o = Eval(source, args);
    if (!o.ok()) {
      Note(source, args, "fault " + o.fault->message + ", expected " + expected.Repr());
    } else if (!RefEqual(o.value, expected)) {
      Note(source, args, "got " + o.value.Repr() + ", expected " + expected.Repr());
    }
  }

  void ExpectFault(const std::string& source, std::vector<Value> args) {
    dsl::Outcome o = Eval(source, args);
    if (o.ok()) Note(source, args, "got " + o.value.Repr() + ", expected a fault");
  }

  std::vector<std::string> take() { return std::move(divergences_); }

 private:
  dsl::Outcome Eval(const std::string& source, const std::vector<Value>& args) {
    auto it = cache_.find(source);
    if (it == cache_.end()) it = cache_.emplace(source, dsl::ParseExpression(source)).first;
    return dsl::Evaluate(it->second, args);
  }

  void Note(const std::string& source, const std::vector<Value>& args, const std::string& what) {
    std::string s = source + " on (";
    for (size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i].Repr();
    divergences_.push_back(s + "): " + what);
  }

  std::map<std::string, dsl::Expr> cache_;
  std::vector<std::string> divergences_;
};

using CaseBody = void (*)(Checker&, Gen&, int);

void Arithmetic(Checker& c, Gen& g, int trials) {
  for (const char op : {'+', '-', '*', '/'}) {
    const std::string src = std::string("lambda a, b: a ") + op + " b";
    for (int i = 0; i < trials; ++i) {
      double a = g.Number();
      double b = g.Number();
      if (op == '/' && i % 25 == 0) b = 0;
      if (op == '/' && b == 0) {
        c.ExpectFault(src, {a, b});
        continue;
      }
      double expected = op == '+' ? a + b : op == '-' ? a - b : op == '*' ? a * b : a / b;
      c.Expect(src, {a, b}, expected);
    }
  }
}

void UnaryMinus(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    double a = g.Number();
    c.Expect("lambda a: -a", {a}, 0.0 - a);
    c.Expect("lambda a: --a", {a}, a);
  }
}

void Concatenation(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    std::string a = g.String();
    std::string b = g.String();
    std::string joined;
    for (char ch : a) joined += ch;
    for (char ch : b) joined += ch;
    c.Expect("lambda a, b: a + b", {a, b}, joined);

    List la;
    List lb;
    for (int k = g.Int(0, 3); k > 0; --k) la.push_back(g.Any(1));
    for (int k = g.Int(0, 3); k > 0; --k) lb.push_back(g.Any(1));
    List lj = la;
    for (const Value& v : lb) lj.push_back(v);
    c.Expect("lambda a, b: a + b", {la, lb}, lj);
  }
}

void OrderingNumbers(Checker& c, Gen& g, int trials) {
  for (const char* op : {"<", "<=", ">", ">="}) {
    const std::string src = std::string("lambda a, b: a ") + op + " b";
    for (int i = 0; i < trials; ++i) {
      double a = g.Number();
      double b = i % 5 == 0 ? a : g.Number();
      c.Expect(src, {a, b}, RefOrder(op, Sign(a, b)));
    }
  }
}

void OrderingStrings(Checker& c, Gen& g, int trials) {
  for (const char* op : {"<", "<=", ">", ">="}) {
    const std::string src = std::string("lambda a, b: a ") + op + " b";
    for (int i = 0; i < trials; ++i) {
      std::string a = g.Word();
      std::string b = i % 5 == 0 ? a : g.Word();
      c.Expect(src, {a, b}, RefOrder(op, RefCompareStrings(a, b)));
    }
  }
}

void ChainedComparison(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    double a = g.Int(0, 5);
    double b = g.Int(0, 5);
    double d = g.Int(0, 5);
    c.Expect("lambda a, b, c: a < b <= c", {a, b, d}, a < b && b <= d);
  }
}

void Equality(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    Value a = g.Any();
    Value b = i % 4 == 0 ? a : g.Any();
    c.Expect("lambda a, b: a == b", {a, b}, RefEqual(a, b));
    c.Expect("lambda a, b: a != b", {a, b}, !RefEqual(a, b));
    c.Expect("lambda key, value: key == value", {a, b}, RefEqual(a, b));
  }
}

void BooleanOperators(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    Value a = g.Any();
    Value b = g.Any();
    c.Expect("lambda a, b: a and b", {a, b}, RefTruthy(a) && RefTruthy(b));
    c.Expect("lambda a, b: a or b", {a, b}, RefTruthy(a) || RefTruthy(b));
    c.Expect("lambda a: not a", {a}, !RefTruthy(a));
  }
}

void ListIndexing(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    List l;
    for (int k = g.Int(0, 5); k > 0; --k) l.push_back(g.Any(1));
    long long n = static_cast<long long>(l.size());
    long long idx = g.Int(-7, 7);
    long long k = idx < 0 ? idx + n : idx;
    Value expected = (k >= 0 && k < n) ? l[static_cast<size_t>(k)] : Value();
    c.Expect("lambda a, i: a[i]", {l, static_cast<double>(idx)}, expected);
  }
}

void StringIndexing(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    std::string s = g.Word();
    long long n = static_cast<long long>(s.size());
    long long idx = g.Int(-7, 7);
    long long k = idx < 0 ? idx + n : idx;
    Value expected = (k >= 0 && k < n) ? Value(std::string(1, s[static_cast<size_t>(k)])) : Value();
    c.Expect("lambda a, i: a[i]", {s, static_cast<double>(idx)}, expected);
  }
}

void MapIndexing(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    Map m;
    std::vector<std::string> keys;
    for (int k = g.Int(0, 4); k > 0; --k) {
      std::string key = g.Word();
      m[key] = g.Any(1);
      keys.push_back(key);
    }
    std::string probe = (!keys.empty() && g.Int(0, 1) == 1)
                            ? keys[g.Int(0, static_cast<int>(keys.size()) - 1)]
                            : g.Word();
    Value expected;
    for (const auto& [k, v] : m) {
      if (RefCompareStrings(k, probe) == 0) expected = v;
    }
    c.Expect("lambda a, k: a[k]", {m, probe}, expected);
  }
}

void Methods(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    std::string s = g.String();
    std::string a = i % 3 == 0 && !s.empty() ? s.substr(g.Int(0, static_cast<int>(s.size()) - 1))
                                             : g.String(3);
    std::string p = i % 3 == 1 ? s.substr(0, g.Int(0, static_cast<int>(s.size()))) : g.String(3);
    c.Expect("lambda s, a: s.endswith(a)", {s, a}, RefEndsWith(s, a));
    c.Expect("lambda s, a: s.startswith(a)", {s, p}, RefStartsWith(s, p));
    c.Expect("lambda s: s.strip()", {s}, RefStrip(s));
    c.Expect("lambda s: s.lower()", {s}, RefLower(s));
  }
}

void Len(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    Value v = g.Any();
    if (v.is_string()) {
      c.Expect("lambda a: len(a)", {v}, static_cast<double>(v.as_string().size()));
    } else if (v.is_list()) {
      c.Expect("lambda a: len(a)", {v}, static_cast<double>(v.as_list().size()));
    } else if (v.is_map()) {
      size_t n = 0;
      for (auto it = v.as_map().begin(); it != v.as_map().end(); ++it) ++n;
      c.Expect("lambda a: len(a)", {v}, static_cast<double>(n));
    } else {
      c.ExpectFault("lambda a: len(a)", {v});
    }
  }
}

void Abs(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    double a = g.Number();
    c.Expect("lambda a: abs(a)", {a}, a < 0 ? -a : a);
  }
}

void MinMax(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    List xs;
    for (int k = g.Int(1, 6); k > 0; --k) xs.push_back(g.Number());
    double lo = xs[0].as_number();
    double hi = lo;
    for (const Value& x : xs) {
      if (x.as_number() < lo) lo = x.as_number();
      if (x.as_number() > hi) hi = x.as_number();
    }
    c.Expect("lambda a: min(a)", {xs}, lo);
    c.Expect("lambda a: max(a)", {xs}, hi);
    double a = g.Number();
    double b = g.Number();
    c.Expect("lambda a, b: min(a, b)", {a, b}, b < a ? b : a);
    c.Expect("lambda a, b: max(a, b)", {a, b}, b > a ? b : a);
    std::string s = g.Word();
    std::string t = g.Word();
    c.Expect("lambda a, b: min(a, b)", {s, t}, RefCompareStrings(t, s) < 0 ? t : s);
  }
}

void SortedLines(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    std::string text;
    for (int k = g.Int(0, 5); k > 0; --k) text += g.Word() + (g.Int(0, 1) ? " \n" : "\n");
    if (g.Int(0, 1)) text += g.Word();
    c.Expect("lambda a: sorted_lines(a)", {text}, RefSortedLines(text));
  }
}

void SortedLinesIgnoresOrder(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    std::vector<std::string> lines;
    for (int k = g.Int(1, 6); k > 0; --k) lines.push_back(g.Word());
    auto join = [](const std::vector<std::string>& ls) {
      std::string out;
      for (const auto& l : ls) out += "  " + l + "\n";
      return out;
    };
    std::string a = join(lines);
    std::shuffle(lines.begin(), lines.end(), g.engine());
    c.Expect("lambda a, b: sorted_lines(a) == sorted_lines(b)", {a, join(lines)}, true);
    lines.push_back("extra");
    c.Expect("lambda a, b: sorted_lines(a) == sorted_lines(b)", {a, join(lines)}, false);
  }
}

// Predicates that appear in published evaluator configs.
void PublishedPredicates(Checker& c, Gen& g, int trials) {
  for (int i = 0; i < trials; ++i) {
    double left = g.Number();
    double right = i % 2 ? left + g.Real(-2, 2) : g.Number();
    double diff = left - right;
    c.Expect("lambda left, right:abs(left-right) < 1", {left, right}, (diff < 0 ? -diff : diff) < 1);
    c.Expect("lambda key, value: key > value", {left, right}, right < left);

    List layers;
    for (int k = g.Int(0, 4); k > 0; --k) layers.push_back(Map{{"name", g.Word()}});
    Value dump = Map{{"layers", layers}};
    c.Expect("lambda dump:len(dump['layers'])", {dump}, static_cast<double>(layers.size()));
    Value first = layers.empty() ? Value() : layers[0]["name"];
    c.Expect("lambda dump:dump['layers'][0]['name']", {dump}, first);

    std::string key = g.Word() + (i % 2 ? "._name" : "");
    c.Expect("lambda k,v:k.endswith('._name')", {key, g.Any()}, RefEndsWith(key, "._name"));
  }
}

}  // namespace

std::vector<OracleCase> DslOracleCases() {
  static const std::vector<std::pair<const char*, CaseBody>> kBodies = {
      {"Arithmetic", Arithmetic},
      {"UnaryMinus", UnaryMinus},
      {"Concatenation", Concatenation},
      {"OrderingNumbers", OrderingNumbers},
      {"OrderingStrings", OrderingStrings},
      {"ChainedComparison", ChainedComparison},
      {"Equality", Equality},
      {"BooleanOperators", BooleanOperators},
      {"ListIndexing", ListIndexing},
      {"StringIndexing", StringIndexing},
      {"MapIndexing", MapIndexing},
      {"Methods", Methods},
      {"Len", Len},
      {"Abs", Abs},
      {"MinMax", MinMax},
      {"SortedLines", SortedLines},
      {"SortedLinesIgnoresOrder", SortedLinesIgnoresOrder},
      {"PublishedPredicates", PublishedPredicates},
  };
  std::vector<OracleCase> out;
  std::uint64_t seed = 1;
  for (const auto& [name, body] : kBodies) {
    out.push_back({name, [body = body, seed](int trials) {
                     Checker c;
                     Gen g(seed);
                     body(c, g, trials);
                     return c.take();
                   }});
    ++seed;
  }
  return out;
}

}  // namespace deskbench::testing
