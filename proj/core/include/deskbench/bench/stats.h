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

#include <string>
#include <vector>

#include "deskbench/bench/manifest.h"

namespace deskbench {

struct CategoryCount {
  std::string label;
  size_t count = 0;
};

struct StatsTable {
  size_t total = 0;
  std::vector<CategoryCount> by_interface;   // GUI, CLI, GUI+CLI
  std::vector<CategoryCount> by_difficulty;  // Easy, Medium, Hard, Open
  std::vector<CategoryCount> by_domain;      // fixed domain order
  double avg_instruction_words = 0;
  // Meta prompt plus framed instruction, in words.
  double avg_prompt_words = 0;
};

StatsTable SuiteStats(const Suite& suite);

// count / total as a percentage with one decimal, rounded half away from
// zero in exact integer arithmetic. "0.0%" when total is 0.
std::string FormatPercent(size_t count, size_t total);

// One decimal, half away from zero.
std::string FormatOneDecimal(double v);

// "GUI 38 (22.5%) · CLI 33 (19.5%) · ..." over interface then difficulty.
std::string StatsSummaryLine(const StatsTable& stats);

// Multi-line human-readable table.
std::string RenderStats(const StatsTable& stats);

}  // namespace deskbench
