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

#include "deskbench/bench/manifest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "deskbench/env/protocol.h"

namespace deskbench {

namespace {

std::string Join(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

constexpr const char* kTaskFields[] = {"id",        "domain",   "instruction",    "difficulty",
                                       "interface", "config",   "evaluator",      "max_steps",
                                       "meta_prompt_id", "agent"};

// Reads typed fields of one object, recording problems instead of throwing.
class Fields {
 public:
  Fields(const nlohmann::json& j, std::string context, std::vector<std::string>* errors)
      : j_(j), context_(std::move(context)), errors_(errors) {}

  void Problem(const std::string& msg) { errors_->push_back(context_ + msg); }

  const nlohmann::json* Get(const char* name, bool required) {
    auto it = j_.find(name);
    if (it == j_.end()) {
      if (required) Problem(std::string("missing field '") + name + "'");
      return nullptr;
    }
    return &*it;
  }

  std::string String(const char* name, bool required, std::string fallback = "") {
    const nlohmann::json* v = Get(name, required);
    if (v == nullptr) return fallback;
    if (!v->is_string()) {
      Problem(std::string("field '") + name + "' must be a string");
      return fallback;
    }
    return v->get<std::string>();
  }

  template <typename Enum, typename ParseFn>
  Enum Choice(const char* name, ParseFn parse, Enum fallback) {
    const nlohmann::json* v = Get(name, true);
    if (v == nullptr) return fallback;
    if (v->is_string()) {
      if (auto e = parse(v->get<std::string>())) return *e;
    }
    Problem(std::string("field '") + name + "' has invalid value " + DumpJson(*v));
    return fallback;
  }

 private:
  const nlohmann::json& j_;
  std::string context_;
  std::vector<std::string>* errors_;
};

std::pair<size_t, size_t> LineColumn(const std::string& text, size_t byte) {
  size_t line = 1;
  size_t col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ManifestError::ManifestError(std::vector<std::string> problems)
    : std::runtime_error(Join(problems)), problems_(std::move(problems)) {}

nlohmann::json ToJson(const Task& task) {
  nlohmann::json config = nlohmann::json::array();
  for (const SetupStep& s : task.config) config.push_back(ToJson(s));
  nlohmann::json j = {{"id", task.id},
                      {"domain", ToString(task.domain)},
                      {"instruction", task.instruction},
                      {"difficulty", ToString(task.difficulty)},
                      {"interface", ToString(task.interface)},
                      {"config", std::move(config)},
                      {"evaluator", ToJson(task.evaluator)},
                      {"max_steps", task.max_steps},
                      {"meta_prompt_id", task.meta_prompt_id}};
  if (task.agent.planner_grounder) {
    j["agent"] = {{"planner_grounder", true}, {"grounder_profile", task.agent.grounder_profile}};
  }
  return j;
}

Task TaskFromJson(const nlohmann::json& j, const std::string& context,
                  std::vector<std::string>* errors) {
  Task t;
  if (!j.is_object()) {
    errors->push_back(context + "task must be an object");
    return t;
  }
  Fields f(j, context, errors);
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kTaskFields), std::end(kTaskFields), key) == std::end(kTaskFields)) {
      f.Problem("unknown field '" + key + "'");
    }
  }
  t.id = f.String("id", true);
  t.instruction = f.String("instruction", true);
  t.meta_prompt_id = f.String("meta_prompt_id", false, "generic");
  t.domain = f.Choice("domain", ParseDomain, Domain::kAlgebra);
  t.difficulty = f.Choice("difficulty", ParseDifficulty, Difficulty::kEasy);
  t.interface = f.Choice("interface", ParseInterface, Interface::kGuiCli);
  if (const nlohmann::json* ms = f.Get("max_steps", false)) {
    if (ms->is_number_integer()) {
      t.max_steps = ms->get<int>();
    } else {
      f.Problem("field 'max_steps' must be an integer");
    }
  }
  if (const nlohmann::json* cfg = f.Get("config", false)) {
    if (!cfg->is_array()) {
      f.Problem("field 'config' must be an array");
    } else {
      for (size_t i = 0; i < cfg->size(); ++i) {
        try {
          t.config.push_back(SetupStepFromJson((*cfg)[i]));
        } catch (const std::exception& e) {
          f.Problem("config " + std::to_string(i) + ": " + e.what());
        }
      }
    }
  }
  if (const nlohmann::json* ev = f.Get("evaluator", true)) {
    t.evaluator = EvalSpecFromJson(*ev, context + "evaluator", errors);
  }
  if (const nlohmann::json* ag = f.Get("agent", false)) {
    if (!ag->is_object()) {
      f.Problem("field 'agent' must be an object");
    } else {
      t.agent.planner_grounder = ag->value("planner_grounder", false);
      t.agent.grounder_profile = ag->value("grounder_profile", "");
    }
  }
  return t;
}

nlohmann::json ToJson(const Suite& suite) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const Task& t : suite.tasks) tasks.push_back(ToJson(t));
  return {{"name", suite.name}, {"tasks", std::move(tasks)}};
}

Suite SuiteFromText(const std::string& text, const std::string& source_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    size_t colon = what.find(": ", what.find("parse error"));
    throw ManifestError({"line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + (colon == std::string::npos ? what : what.substr(colon + 2))});
  }

  Suite suite;
  suite.source_path = source_path;
  std::vector<std::string> errors;
  const nlohmann::json* tasks = &doc;
  if (doc.is_object()) {
    suite.name = doc.value("name", "");
    if (doc.contains("meta_prompts")) {
      const auto& mp = doc["meta_prompts"];
      if (!mp.is_object()) {
        errors.push_back("meta_prompts must be an object");
      } else {
        for (const auto& [id, text] : mp.items()) {
          if (text.is_string()) {
            suite.meta_prompts.Register(id, text.get<std::string>());
          } else {
            errors.push_back("meta_prompts." + id + " must be a string");
          }
        }
      }
    }
    for (const auto& [key, _] : doc.items()) {
      if (key != "name" && key != "meta_prompts" && key != "tasks") {
        errors.push_back("unknown top-level field '" + key + "'");
      }
    }
    if (!doc.contains("tasks")) {
      throw ManifestError({"missing field 'tasks'"});
    }
    tasks = &doc["tasks"];
  }
  if (!tasks->is_array()) throw ManifestError({"'tasks' must be an array"});

  std::map<std::string, size_t> seen;
  for (size_t i = 0; i < tasks->size(); ++i) {
    const nlohmann::json& tj = (*tasks)[i];
    std::string ctx = "tasks[" + std::to_string(i) + "]";
    if (tj.is_object() && tj.contains("id") && tj["id"].is_string()) {
      ctx += " (id '" + tj["id"].get<std::string>() + "')";
    }
    ctx += ": ";
    Task t = TaskFromJson(tj, ctx, &errors);
    for (const std::string& e : ValidateTask(t)) errors.push_back(ctx + e);
    if (!t.meta_prompt_id.empty() && !suite.meta_prompts.Find(t.meta_prompt_id)) {
      errors.push_back(ctx + "unknown meta_prompt_id '" + t.meta_prompt_id + "'");
    }
    if (!t.id.empty()) {
      auto [it, fresh] = seen.emplace(t.id, i);
      if (!fresh) {
        errors.push_back(ctx + "duplicate id '" + t.id + "' (first at tasks[" +
                         std::to_string(it->second) + "])");
      }
    }
    suite.tasks.push_back(std::move(t));
  }
  if (!errors.empty()) throw ManifestError(std::move(errors));
  return suite;
}

Suite LoadManifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError({"cannot read manifest " + path});
  std::stringstream buf;
  buf << in.rdbuf();
  Suite s = SuiteFromText(buf.str(), path);
  return s;
}

}  // namespace deskbench
