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

#include <benchmark/benchmark.h>

#include "deskbench/dsl/expr.h"
#include "deskbench/eval_engine.h"

namespace deskbench {
namespace {

void BM_ParsePredicate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::ParseExpression("lambda left, right:abs(left-right) < 1"));
  }
}
BENCHMARK(BM_ParsePredicate);

void BM_EvaluatePredicate(benchmark::State& state) {
  dsl::Expr e = dsl::ParseExpression("lambda left, right:abs(left-right) < 1");
  std::vector<Value> args = {Value(2400000.4), Value(2400000)};
  for (auto _ : state) benchmark::DoNotOptimize(dsl::Evaluate(e, args));
}
BENCHMARK(BM_EvaluatePredicate);

void BM_SortedLines(benchmark::State& state) {
  dsl::Expr e = dsl::ParseExpression("lambda out: sorted_lines(out)");
  std::string text;
  for (int i = 0; i < state.range(0); ++i) text += "line " + std::to_string((i * 7919) % 1000) + "\n";
  std::vector<Value> args = {Value(text)};
  for (auto _ : state) benchmark::DoNotOptimize(dsl::Evaluate(e, args));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SortedLines)->Arg(16)->Arg(256);

Value WideDump(int objects) {
  Map all;
  for (int i = 0; i < objects; ++i) {
    all["body" + std::to_string(i)] =
        Map{{"distance", Value(i * 1000.0)}, {"visible", Value(i % 2 == 0)}, {"label", Value(true)}};
  }
  return Map{{"objects", Value(std::move(all))}, {"simTime", Value(2451545.0)}};
}

void BM_StatesCheck(benchmark::State& state) {
  Check c;
  c.type = CheckType::kStates;
  c.find = "lambda k, v: k.endswith('.label')";
  c.key = "lambda k: k";
  c.value = true;
  StaticEvalContext ctx;
  ctx.dump = WideDump(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(RunCheck(c, 0, ctx));
}
BENCHMARK(BM_StatesCheck)->Arg(10)->Arg(200);

}  // namespace
}  // namespace deskbench
