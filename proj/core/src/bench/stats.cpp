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

#include "deskbench/bench/stats.h"

#include <cmath>
#include <cstdio>

namespace deskbench {

namespace {

const char* InterfaceLabel(Interface i) {
  switch (i) {
    case Interface::kGui: return "GUI";
    case Interface::kCli: return "CLI";
    case Interface::kGuiCli: return "GUI+CLI";
  }
  return "";
}

const char* DifficultyLabel(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy: return "Easy";
    case Difficulty::kMedium: return "Medium";
    case Difficulty::kHard: return "Hard";
    case Difficulty::kOpen: return "Open";
  }
  return "";
}

std::string Entry(const CategoryCount& c, size_t total) {
  return c.label + " " + std::to_string(c.count) + " (" + FormatPercent(c.count, total) + ")";
}

}  // namespace

StatsTable SuiteStats(const Suite& suite) {
  StatsTable s;
  s.total = suite.tasks.size();
  for (Interface i : {Interface::kGui, Interface::kCli, Interface::kGuiCli}) {
    s.by_interface.push_back({InterfaceLabel(i), 0});
  }
  for (Difficulty d :
       {Difficulty::kEasy, Difficulty::kMedium, Difficulty::kHard, Difficulty::kOpen}) {
    s.by_difficulty.push_back({DifficultyLabel(d), 0});
  }
  for (Domain d : kAllDomains) s.by_domain.push_back({ToString(d), 0});

  size_t instruction_words = 0;
  size_t prompt_words = 0;
  for (const Task& t : suite.tasks) {
    ++s.by_interface[static_cast<size_t>(t.interface)].count;
    ++s.by_difficulty[static_cast<size_t>(t.difficulty)].count;
    ++s.by_domain[static_cast<size_t>(t.domain)].count;
    size_t words = WordCount(t.instruction);
    instruction_words += words;
    const std::string* meta = suite.meta_prompts.Find(t.meta_prompt_id);
    prompt_words += (meta ? WordCount(*meta) : 0) + WordCount(kTaskFrame) + words;
  }
  if (s.total > 0) {
    s.avg_instruction_words = static_cast<double>(instruction_words) / s.total;
    s.avg_prompt_words = static_cast<double>(prompt_words) / s.total;
  }
  return s;
}

std::string FormatPercent(size_t count, size_t total) {
  if (total == 0) return "0.0%";
  // Tenths of a percent: round(count * 1000 / total), halves upward.
  unsigned long long tenths =
      (2ull * count * 1000ull + total) / (2ull * static_cast<unsigned long long>(total));
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string FormatOneDecimal(double v) {
  double r = std::round(v * 10.0) / 10.0;
  if (r == 0) r = 0;  // no "-0.0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", r);
  return buf;
}

std::string StatsSummaryLine(const StatsTable& stats) {
  std::string out;
  auto add = [&](const std::vector<CategoryCount>& cats) {
    for (const CategoryCount& c : cats) {
      if (!out.empty()) out += " · ";
      out += Entry(c, stats.total);
    }
  };
  add(stats.by_interface);
  add(stats.by_difficulty);
  return out;
}

std::string RenderStats(const StatsTable& stats) {
  std::string out = "Tasks: " + std::to_string(stats.total) + "\n";
  auto section = [&](const char* title, const std::vector<CategoryCount>& cats) {
    out += std::string(title) + ":\n";
    for (const CategoryCount& c : cats) out += "  " + Entry(c, stats.total) + "\n";
  };
  section("Interface", stats.by_interface);
  section("Difficulty", stats.by_difficulty);
  section("Domain", stats.by_domain);
  out += "Avg. instruction length (words): " + FormatOneDecimal(stats.avg_instruction_words) + "\n";
  out += "Avg. agent prompt length (words): " + FormatOneDecimal(stats.avg_prompt_words) + "\n";
  return out;
}

}  // namespace deskbench
