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
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "deskbench/value.h"

namespace deskbench::testing {

// Random inputs. Numbers mix small integers, fractions and negatives so both
// exact and inexact doubles are covered.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double Number();
  std::string String(int max_len = 8);
  std::string Word(int max_len = 6);
  Value Any(int depth = 2);
  double Real(double lo, double hi);
  int Int(int lo, int hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// One operator or builtin checked against a brute-force reference. `run`
// evaluates `trials` random inputs and returns a description of each
// divergence.
struct OracleCase {
  std::string name;
  std::function<std::vector<std::string>(int trials)> run;
};

std::vector<OracleCase> DslOracleCases();

}  // namespace deskbench::testing
