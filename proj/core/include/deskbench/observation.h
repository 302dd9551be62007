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

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deskbench/image.h"
#include "deskbench/model.h"

namespace deskbench {

// One accessibility element as served by an environment.
struct A11yNode {
  std::string role;
  std::string name;
  std::string text;
  Box bbox;
  std::set<std::string> states;
  std::vector<A11yNode> children;
};

nlohmann::json ToJson(const A11yNode& node);
// Throws std::runtime_error on schema violations.
A11yNode A11yNodeFromJson(const nlohmann::json& j);

struct FilterOptions {
  // 0 keeps every element that passes the predicate.
  size_t max_elements = 0;
};

// Retained elements in pre-order. Children are not carried over.
struct FilteredTree {
  std::vector<A11yNode> nodes;
};

// visible and showing, enabled or carrying text, positive area.
bool PassesFilter(const A11yNode& node);

FilteredTree FilterA11y(const A11yNode& root, FilterOptions options = {});

// role \t name \t text \t (x,y) \t (w,h), one line per element. Tabs and
// newlines inside fields are escaped so every element stays on one line.
std::string LinearizeA11y(const FilteredTree& tree);

// Tags 1..N in pre-order.
SomMap AssignSomTags(const FilteredTree& tree);

// Topmost (last in pre-order) retained element containing the point.
const A11yNode* HitTest(const FilteredTree& tree, PixelPoint p);

inline constexpr int kSomStrokeWidth = 2;
inline constexpr int kSomLabelScale = 2;
inline constexpr int kSomLabelPadding = 2;
inline constexpr Rgb kSomColor{255, 0, 0};
inline constexpr Rgb kSomLabelText{255, 255, 255};

void DrawSomOverlay(Image& image, const SomMap& som);
// Decodes, annotates, re-encodes. Throws std::runtime_error("bad
// screenshot") when the input does not decode.
Bytes RenderSomOverlay(const Bytes& screenshot, const SomMap& som);

class ObservationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ObservationError naming the missing feed.
Observation ComposeObservation(ObsMode mode,
                               const std::optional<Bytes>& screenshot,
                               const std::optional<A11yNode>& tree,
                               Resolution resolution = {},
                               FilterOptions options = {});

}  // namespace deskbench
