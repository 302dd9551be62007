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

#include "golden_cases.h"

#include <stdexcept>

#include "deskbench/eval_spec.h"

namespace deskbench::testing {

Check ParseCheck(const std::string& json) {
  std::vector<std::string> errors;
  EvalSpec spec = EvalSpecFromJson(nlohmann::json::array({nlohmann::json::parse(json)}), "check",
                                   &errors);
  if (!errors.empty()) throw std::runtime_error(errors.front());
  std::vector<std::string> problems = ValidateCheck(spec.checks.at(0), "check 0: ");
  if (!problems.empty()) throw std::runtime_error(problems.front());
  return spec.checks.at(0);
}

Value EclipseDump(double earth_distance, bool sol_visible, bool moon_visible, double fraction) {
  return Map{
      {"objects", Map{{"Earth", Map{{"distance", earth_distance}, {"visible", true}}},
                      {"Sol", Map{{"distance", 149598023.0}, {"visible", sol_visible}}},
                      {"Moon", Map{{"distance", 384400.0}, {"visible", moon_visible}}}}},
      {"eclipse", Map{{"fraction", fraction}}},
  };
}

EvalSpec EclipseSpec() {
  EvalSpec spec;
  spec.checks.push_back(ParseCheck(R"j({"type": "info",
      "key": "lambda dump: dump['objects']['Earth']['distance']", "value": 0,
      "pred": "lambda k, v: abs(k - v) < 450000"})j"));
  spec.checks.push_back(ParseCheck(R"j({"type": "info",
      "key": "lambda dump: dump['objects']['Sol']['visible']", "value": false})j"));
  spec.checks.push_back(ParseCheck(R"j({"type": "info",
      "key": "lambda dump: dump['objects']['Moon']['visible']", "value": true})j"));
  spec.checks.push_back(ParseCheck(R"j({"type": "info",
      "key": "lambda dump: dump['eclipse']['fraction']", "value": 0.99,
      "pred": "lambda key, value: key > value"})j"));
  return spec;
}

namespace {

std::function<void(StaticEvalContext&)> WithDump(Value dump) {
  return [dump](StaticEvalContext& ctx) { ctx.dump = dump; };
}

std::function<void(StaticEvalContext&)> WithQuery(std::string query, Value answer) {
  return [query, answer](StaticEvalContext& ctx) { ctx.queries[query] = answer; };
}

Value Layers(std::vector<std::string> names) {
  List layers;
  for (auto& n : names) layers.push_back(Map{{"name", n}, {"visible", true}});
  return Map{{"layers", layers}};
}

std::shared_ptr<ValidatorRegistry> Validators(bool success) {
  auto r = std::make_shared<ValidatorRegistry>();
  r->Register(Domain::kAtp, [success](EvalContext&) {
    return ValidatorReport{success, success ? "proof compiled" : "proof rejected"};
  });
  return r;
}

}  // namespace

std::vector<GoldenCase> GoldenCases() {
  std::vector<GoldenCase> cases;
  auto add = [&](std::string name, std::string json, std::function<void(StaticEvalContext&)> fx,
                 bool pass, std::shared_ptr<ValidatorRegistry> validators = nullptr) {
    cases.push_back({std::move(name), std::move(json), std::move(fx), pass, std::move(validators)});
  };

  // Selection query answered by the application.
  const std::string sell = R"j({"type":"info","key":"sell",
      "value":["atom id #!1/A:201@O idatm_type O3", "atom id #!1/A:202@O idatm_type O3"]})j";
  add("water selection matches", sell,
      WithQuery("sell", List{"atom id #!1/A:201@O idatm_type O3",
                             "atom id #!1/A:202@O idatm_type O3"}),
      true);
  add("water selection incomplete", sell,
      WithQuery("sell", List{"atom id #!1/A:201@O idatm_type O3"}), false);

  // Attribute selected by key suffix, target path given as a constant.
  const std::string centroid = R"j({"type":"states",
      "find":"lambda k,v:k.endswith('._name')",
      "key":"lambda k:'centroids._atoms_drawing'",
      "value":"[[13.0012 1.7766 21.3672 1.]]"})j";
  add("centroid drawn with radius 1", centroid,
      WithDump(Map{{"centroids", Map{{"_name", "centroids"},
                                     {"_atoms_drawing", "[[13.0012 1.7766 21.3672 1.]]"}}}}),
      true);
  add("centroid drawn with radius 2", centroid,
      WithDump(Map{{"centroids", Map{{"_name", "centroids"},
                                     {"_atoms_drawing", "[[13.0012 1.7766 21.3672 2.]]"}}}}),
      false);
  add("no named model present", centroid,
      WithDump(Map{{"centroids", Map{{"_atoms_drawing", "[[13.0012 1.7766 21.3672 1.]]"}}}}),
      false);

  // Layer panel shows exactly one layer.
  const std::string layer_count = R"j({"type":"info","key":"lambda dump:len(dump['layers'])","value":1})j";
  add("one layer displayed", layer_count, WithDump(Layers({"boundary_region@PERMANENT"})), true);
  add("two layers displayed", layer_count,
      WithDump(Layers({"boundary_region@PERMANENT", "roads@PERMANENT"})), false);
  const std::string layer_name = R"j({"type":"info",
      "key":"lambda dump:dump['layers'][0]['name']","value":"boundary_region@PERMANENT"})j";
  add("boundary layer displayed", layer_name, WithDump(Layers({"boundary_region@PERMANENT"})), true);
  add("wrong layer displayed", layer_name, WithDump(Layers({"roads@PERMANENT"})), false);
  add("no layer displayed", layer_name, WithDump(Layers({})), false);

  // Julian date within one day.
  const std::string julian = R"j({"type":"info","key":"simTime","value":2400000,
      "pred":"lambda left, right:abs(left-right) < 1"})j";
  add("julian date 2400000.4", julian, WithDump(Map{{"simTime", 2400000.4}}), true);
  add("julian date 2400002", julian, WithDump(Map{{"simTime", 2400002.0}}), false);
  add("julian date 2399999.5", julian, WithDump(Map{{"simTime", 2399999.5}}), true);
  add("julian date 2400001", julian, WithDump(Map{{"simTime", 2400001.0}}), false);

  // Ligand selection and residue colors, both application queries.
  const std::string ligand = R"j({"type":"info","key":"sel",
      "value":["atom id /A:9@N1 idatm_type N3+", "atom id /A:9@C2 idatm_type C3"]})j";
  add("ligand selected", ligand,
      WithQuery("sel", List{"atom id /A:9@N1 idatm_type N3+", "atom id /A:9@C2 idatm_type C3"}),
      true);
  add("ligand not selected", ligand, WithQuery("sel", List{}), false);
  const std::string rescolor = R"j({"type":"info","key":"rescolor /A",
      "value":["#1/A:1 color #d2b48c", "#1/A:9 color #ff00ff"]})j";
  add("ligand colored magenta", rescolor,
      WithQuery("rescolor /A", List{"#1/A:1 color #d2b48c", "#1/A:9 color #ff00ff"}), true);
  add("ligand colored tan", rescolor,
      WithQuery("rescolor /A", List{"#1/A:1 color #d2b48c", "#1/A:9 color #d2b48c"}), false);

  // Point table exported through a database command.
  const std::string points = R"j({"type":"db","cmd":"v.to.db",
      "kwargs":{"flags":"p","map":"countries@PERMANENT","type":"point","option":"coor"},
      "key":"lambda out: out.strip()",
      "value":"cat|x|y|z\n1|-3.7038|40.4168|0\n2|8.348947891274|0",
      "pred":"lambda key, value: key == value"})j";
  add("mediterranean point deleted", points,
      [](StaticEvalContext& ctx) {
        ctx.commands["v.to.db"] = "cat|x|y|z\n1|-3.7038|40.4168|0\n2|8.348947891274|0\n\n";
      },
      true);
  add("mediterranean point still present", points,
      [](StaticEvalContext& ctx) {
        ctx.commands["v.to.db"] =
            "cat|x|y|z\n1|-3.7038|40.4168|0\n2|8.348947891274|0\n3|18.0|35.0|0\n";
      },
      false);

  // Eclipse evaluator, one condition at a time.
  EvalSpec eclipse = EclipseSpec();
  auto eclipse_json = [&](size_t i) { return DumpJson(ToJson(eclipse.checks[i])); };
  add("earth distance 449999", eclipse_json(0), WithDump(EclipseDump(449999, false, true, 1)), true);
  add("earth distance 450000", eclipse_json(0), WithDump(EclipseDump(450000, false, true, 1)), false);
  add("sol hidden", eclipse_json(1), WithDump(EclipseDump(10000, false, true, 1)), true);
  add("sol visible", eclipse_json(1), WithDump(EclipseDump(10000, true, true, 1)), false);
  add("moon visible", eclipse_json(2), WithDump(EclipseDump(10000, false, true, 1)), true);
  add("moon hidden", eclipse_json(2), WithDump(EclipseDump(10000, false, false, 1)), false);
  add("eclipse fraction 0.995", eclipse_json(3), WithDump(EclipseDump(10000, false, true, 0.995)), true);
  add("eclipse fraction 0.99", eclipse_json(3), WithDump(EclipseDump(10000, false, true, 0.99)), false);

  // External proof check.
  const std::string proof = R"j({"type":"placeholder"})j";
  auto atp = [](StaticEvalContext& ctx) { ctx.task_domain = Domain::kAtp; };
  add("proof accepted", proof, atp, true, Validators(true));
  add("proof rejected", proof, atp, false, Validators(false));
  add("no validator registered", proof, atp, false, std::make_shared<ValidatorRegistry>());

  // Declared infeasibility.
  const std::string infeasible = R"j({"type":"signal","value":"FAIL"})j";
  add("infeasible task declared", infeasible,
      [](StaticEvalContext& ctx) { ctx.terminal_signal = Terminal::kFail; }, true);
  add("infeasible task claimed done", infeasible,
      [](StaticEvalContext& ctx) { ctx.terminal_signal = Terminal::kDone; }, false);
  return cases;
}

}  // namespace deskbench::testing
