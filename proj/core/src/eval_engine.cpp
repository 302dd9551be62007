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

#include "deskbench/eval_engine.h"

#include <sys/wait.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <exception>
#include <stdexcept>

#include "deskbench/digest.h"
#include "deskbench/dsl/expr.h"

namespace deskbench {

namespace {

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

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Evaluates `source` as a lambda over `args`; throws with a diagnostic.
Value Apply(const std::string& source, std::initializer_list<Value> args) {
  dsl::Expr expr = dsl::ParseExpression(source);
  std::vector<Value> argv(args);
  if (expr.arity() < argv.size()) argv.resize(expr.arity());
  dsl::Outcome out = dsl::Evaluate(expr, argv);
  if (!out.ok()) {
    throw std::runtime_error("evaluation fault in '" +
                             out.fault->subexpression + "': " +
                             out.fault->message);
  }
  return out.value;
}

void Flatten(const Value& node, const std::string& prefix,
             std::vector<std::pair<std::string, Value>>* out) {
  if (!node.is_map()) return;
  for (const auto& [k, v] : node.as_map()) {
    std::string path = prefix.empty() ? k : prefix + "." + k;
    out->emplace_back(path, v);
    Flatten(v, path, out);
  }
}

std::string AnswerForm(const Value& v, bool ignore_case) {
  std::string s = v.is_number() ? FormatNumber(v.as_number())
                  : v.is_string() ? v.as_string()
                                  : v.Repr();
  s = Trim(s);
  return ignore_case ? Lower(s) : s;
}

std::string NormalizeDigest(std::string_view d) {
  std::string s = Trim(d);
  if (s.rfind("sha256:", 0) == 0) s = s.substr(7);
  return Lower(s);
}

CheckResult Result(size_t index, std::optional<std::string> failure,
                   std::string pass_note) {
  CheckResult r;
  r.index = index;
  r.pass = !failure.has_value();
  r.diagnostic = failure ? *failure : std::move(pass_note);
  return r;
}

CheckResult RunInfo(const Check& c, size_t i, EvalContext& ctx) {
  Value actual = dsl::IsLambdaSource(c.key) ? Apply(c.key, {ctx.FullDump()})
                                            : ctx.Query(c.key);
  auto fail = Compare(actual, c.value, c.pred);
  return Result(i, fail, "info " + c.key + ": " + actual.Repr());
}

CheckResult RunStates(const Check& c, size_t i, EvalContext& ctx) {
  Value dump = ctx.FullDump();
  dsl::Expr find = dsl::ParseExpression(c.find.value_or(""));
  dsl::Expr key = dsl::ParseExpression(c.key);
  size_t matched = 0;
  for (const auto& [path, v] : FlattenDump(dump)) {
    std::vector<Value> fargs = {Value(path), v};
    fargs.resize(find.arity());
    dsl::Outcome sel = dsl::Evaluate(find, fargs);
    if (!sel.ok()) {
      return Result(i, "find fault at '" + path + "': " + sel.fault->message, "");
    }
    if (!(sel.value.is_bool() && sel.value.as_bool())) continue;
    ++matched;
    std::vector<Value> kargs = {Value(path), v};
    kargs.resize(key.arity());
    dsl::Outcome target = dsl::Evaluate(key, kargs);
    if (!target.ok()) {
      return Result(i, "key fault at '" + path + "': " + target.fault->message, "");
    }
    if (!target.value.is_string()) {
      return Result(i, "key for '" + path + "' yielded " + target.value.Repr() +
                           ", expected a path string", "");
    }
    const Value& actual = LookupPath(dump, target.value.as_string());
    if (auto fail = Compare(actual, c.value, c.pred)) {
      return Result(i, "states " + target.value.as_string() + ": " + *fail, "");
    }
  }
  if (matched == 0) return Result(i, "states: find matched no entries", "");
  return Result(i, std::nullopt,
                "states: " + std::to_string(matched) + " entries matched");
}

CheckResult RunDb(const Check& c, size_t i, EvalContext& ctx) {
  std::string output = ctx.RunCommand(c.cmd, c.kwargs);
  Value actual = c.key.empty() ? Value(output)
                 : dsl::IsLambdaSource(c.key) ? Apply(c.key, {Value(output)})
                                              : Value(output);
  auto fail = Compare(actual, c.value, c.pred);
  return Result(i, fail ? std::optional("db " + c.cmd + ": " + *fail) : std::nullopt,
                "db " + c.cmd + ": " + actual.Repr());
}

CheckResult RunFile(const Check& c, size_t i, EvalContext& ctx) {
  Bytes content = ctx.FetchFile(c.path);
  if (c.digest) {
    std::string got = Sha256Hex(content);
    if (got != NormalizeDigest(*c.digest)) {
      return Result(i, "file " + c.path + ": sha256 " + got + " != " + *c.digest, "");
    }
    return Result(i, std::nullopt, "file " + c.path + ": digest matches");
  }
  std::string expected = c.value.is_string() ? c.value.as_string() : c.value.Repr();
  if (std::string(content.begin(), content.end()) != expected) {
    return Result(i, "file " + c.path + ": content differs (" +
                         std::to_string(content.size()) + " bytes)", "");
  }
  return Result(i, std::nullopt, "file " + c.path + ": content matches");
}

CheckResult RunAnswer(const Check& c, size_t i, EvalContext& ctx) {
  std::optional<std::string> answer = ctx.answer();
  if (!answer) return Result(i, "answer: no answer submitted", "");
  std::string got = AnswerForm(Value(*answer), c.ignore_case);
  std::vector<Value> accepted;
  if (c.value.is_list()) {
    accepted = c.value.as_list();
  } else {
    accepted.push_back(c.value);
  }
  for (const Value& v : accepted) {
    if (AnswerForm(v, c.ignore_case) == got) {
      return Result(i, std::nullopt, "answer: '" + got + "' accepted");
    }
  }
  return Result(i, "answer: '" + got + "' not in " + c.value.Repr(), "");
}

CheckResult RunSignal(const Check& c, size_t i, EvalContext& ctx) {
  std::optional<Terminal> t = ctx.terminal();
  std::string want = Upper(c.value.is_string() ? c.value.as_string() : "");
  std::string got = t ? SignalName(*t) : "NONE";
  if (got != want) return Result(i, "signal: got " + got + ", expected " + want, "");
  return Result(i, std::nullopt, "signal: " + got);
}

CheckResult RunPlaceholder(const Check&, size_t i, EvalContext& ctx,
                           const ValidatorRegistry* validators) {
  const Validator* v = validators ? validators->Find(ctx.domain()) : nullptr;
  if (v == nullptr) {
    return Result(i, std::string("placeholder: no validator registered for ") +
                         ToString(ctx.domain()), "");
  }
  ValidatorReport rep = (*v)(ctx);
  return Result(i, rep.success ? std::nullopt
                               : std::optional("placeholder: " + rep.diagnostic),
                "placeholder: " + rep.diagnostic);
}

}  // namespace

void ValidatorRegistry::Register(Domain domain, Validator validator) {
  validators_[domain] = std::move(validator);
}

const Validator* ValidatorRegistry::Find(Domain domain) const {
  auto it = validators_.find(domain);
  return it == validators_.end() ? nullptr : &it->second;
}

Validator CommandValidator(std::string command) {
  return [command](EvalContext& ctx) {
    nlohmann::json doc = {
        {"domain", ToString(ctx.domain())},
        {"terminal", ctx.terminal() ? SignalName(*ctx.terminal()) : ""},
        {"answer", ctx.answer().value_or("")},
    };
    FILE* pipe = popen(command.c_str(), "w");
    if (pipe == nullptr) return ValidatorReport{false, "cannot start '" + command + "'"};
    std::string body = DumpJson(doc);
    fwrite(body.data(), 1, body.size(), pipe);
    int status = pclose(pipe);
    if (status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0) {
      return ValidatorReport{true, "'" + command + "' exited 0"};
    }
    int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return ValidatorReport{false, "'" + command + "' exited " + std::to_string(code)};
  };
}

std::vector<std::pair<std::string, Value>> FlattenDump(const Value& dump) {
  std::vector<std::pair<std::string, Value>> out;
  Flatten(dump, "", &out);
  return out;
}

std::optional<std::string> Compare(const Value& actual, const Value& expected,
                                   const std::optional<std::string>& pred) {
  if (!pred) {
    if (actual == expected) return std::nullopt;
    return "got " + actual.Repr() + ", expected " + expected.Repr();
  }
  Value r;
  try {
    r = Apply(*pred, {actual, expected});
  } catch (const std::exception& e) {
    return e.what();
  }
  if (r.is_bool() && r.as_bool()) return std::nullopt;
  return "pred " + *pred + " gave " + r.Repr() + " for (" + actual.Repr() +
         ", " + expected.Repr() + ")";
}

CheckResult RunCheck(const Check& check, size_t index, EvalContext& ctx,
                     const ValidatorRegistry* validators) {
  try {
    switch (check.type) {
      case CheckType::kInfo: return RunInfo(check, index, ctx);
      case CheckType::kStates: return RunStates(check, index, ctx);
      case CheckType::kDb: return RunDb(check, index, ctx);
      case CheckType::kFile: return RunFile(check, index, ctx);
      case CheckType::kAnswer: return RunAnswer(check, index, ctx);
      case CheckType::kSignal: return RunSignal(check, index, ctx);
      case CheckType::kPlaceholder:
        return RunPlaceholder(check, index, ctx, validators);
    }
    return Result(index, "unknown check type", "");
  } catch (const dsl::SyntaxError& e) {
    return Result(index, std::string("syntax error: ") + e.what(), "");
  } catch (const std::exception& e) {
    return Result(index, e.what(), "");
  }
}

Verdict EvaluateTask(const EvalSpec& spec, EvalContext& ctx,
                     const ValidatorRegistry* validators) {
  std::vector<CheckResult> results;
  results.reserve(spec.checks.size());
  for (size_t i = 0; i < spec.checks.size(); ++i) {
    results.push_back(RunCheck(spec.checks[i], i, ctx, validators));
  }
  return Verdict::FromChecks(std::move(results));
}

Value StaticEvalContext::Query(const std::string& query) {
  auto it = queries.find(query);
  if (it != queries.end()) return it->second;
  return LookupPath(dump, query);
}

std::string StaticEvalContext::RunCommand(const std::string& cmd, const Value&) {
  auto it = commands.find(cmd);
  if (it == commands.end()) throw std::runtime_error("no such command: " + cmd);
  return it->second;
}

Bytes StaticEvalContext::FetchFile(const std::string& path) {
  auto it = files.find(path);
  if (it == files.end()) throw std::runtime_error("not found: " + path);
  return it->second;
}

}  // namespace deskbench
