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

#include "deskbench/observation.h"

#include <algorithm>
#include <cmath>

namespace deskbench {

namespace {

void Collect(const A11yNode& node, const FilterOptions& options,
             FilteredTree* out) {
  if (options.max_elements && out->nodes.size() >= options.max_elements) return;
  if (PassesFilter(node)) {
    A11yNode copy;
    copy.role = node.role;
    copy.name = node.name;
    copy.text = node.text;
    copy.bbox = node.bbox;
    copy.states = node.states;
    out->nodes.push_back(std::move(copy));
  }
  for (const auto& child : node.children) Collect(child, options, out);
}

std::string EscapeField(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out += c;
    }
  }
  return out;
}

Box ClampBox(Box b, int width, int height) {
  int x0 = std::clamp(b.x, 0, width);
  int y0 = std::clamp(b.y, 0, height);
  int x1 = std::clamp(b.x + b.w, 0, width);
  int y1 = std::clamp(b.y + b.h, 0, height);
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace

nlohmann::json ToJson(const A11yNode& node) {
  nlohmann::json j;
  j["role"] = node.role;
  j["name"] = node.name;
  j["text"] = node.text;
  j["bbox"] = {node.bbox.x, node.bbox.y, node.bbox.w, node.bbox.h};
  j["states"] = node.states;
  auto children = nlohmann::json::array();
  for (const auto& c : node.children) children.push_back(ToJson(c));
  j["children"] = std::move(children);
  return j;
}

A11yNode A11yNodeFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("a11y node must be an object");
  A11yNode n;
  n.role = j.value("role", "");
  n.name = j.value("name", "");
  n.text = j.value("text", "");
  if (j.contains("bbox")) {
    const auto& b = j["bbox"];
    if (!b.is_array() || b.size() != 4) {
      throw std::runtime_error("a11y bbox must be [x, y, w, h]");
    }
    n.bbox = {b[0].get<int>(), b[1].get<int>(), b[2].get<int>(),
              b[3].get<int>()};
    if (n.bbox.w < 0 || n.bbox.h < 0) {
      throw std::runtime_error("a11y bbox has negative size");
    }
  }
  if (j.contains("states")) {
    for (const auto& s : j["states"]) n.states.insert(s.get<std::string>());
  }
  if (j.contains("children")) {
    for (const auto& c : j["children"]) n.children.push_back(A11yNodeFromJson(c));
  }
  return n;
}

bool PassesFilter(const A11yNode& node) {
  const bool shown = node.states.count("visible") && node.states.count("showing");
  const bool available = node.states.count("enabled") || !node.text.empty();
  const bool area = node.bbox.w > 0 && node.bbox.h > 0;
  return shown && available && area;
}

FilteredTree FilterA11y(const A11yNode& root, FilterOptions options) {
  FilteredTree out;
  Collect(root, options, &out);
  return out;
}

std::string LinearizeA11y(const FilteredTree& tree) {
  std::string out;
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    const A11yNode& n = tree.nodes[i];
    if (i) out += '\n';
    out += EscapeField(n.role);
    out += '\t';
    out += EscapeField(n.name);
    out += '\t';
    out += EscapeField(n.text);
    out += "\t(" + std::to_string(n.bbox.x) + "," + std::to_string(n.bbox.y) +
           ")\t(" + std::to_string(n.bbox.w) + "," + std::to_string(n.bbox.h) +
           ")";
  }
  return out;
}

SomMap AssignSomTags(const FilteredTree& tree) {
  SomMap som;
  int tag = 1;
  for (const auto& n : tree.nodes) {
    SomEntry e;
    e.bbox = n.bbox;
    e.center = {static_cast<int>(std::round(n.bbox.x + n.bbox.w / 2.0)),
                static_cast<int>(std::round(n.bbox.y + n.bbox.h / 2.0))};
    e.name = n.name;
    som.emplace(tag++, std::move(e));
  }
  return som;
}

const A11yNode* HitTest(const FilteredTree& tree, PixelPoint p) {
  for (auto it = tree.nodes.rbegin(); it != tree.nodes.rend(); ++it) {
    if (it->bbox.Contains(p)) return &*it;
  }
  return nullptr;
}

void DrawSomOverlay(Image& image, const SomMap& som) {
  for (const auto& [tag, entry] : som) {
    Box box = ClampBox(entry.bbox, image.width(), image.height());
    if (box.w <= 0 || box.h <= 0) continue;
    image.StrokeRect(box, kSomStrokeWidth, kSomColor);
    const std::string label = std::to_string(tag);
    Box label_box{box.x, box.y,
                  TextWidth(label, kSomLabelScale) + 2 * kSomLabelPadding,
                  TextHeight(kSomLabelScale) + 2 * kSomLabelPadding};
    image.FillRect(label_box, kSomColor);
    image.DrawText(box.x + kSomLabelPadding, box.y + kSomLabelPadding, label,
                   kSomLabelScale, kSomLabelText);
  }
}

Bytes RenderSomOverlay(const Bytes& screenshot, const SomMap& som) {
  Image image = DecodePng(screenshot);
  if (som.empty()) return screenshot;
  DrawSomOverlay(image, som);
  return EncodePng(image);
}

Observation ComposeObservation(ObsMode mode,
                               const std::optional<Bytes>& screenshot,
                               const std::optional<A11yNode>& tree,
                               Resolution resolution, FilterOptions options) {
  const bool needs_image = mode != ObsMode::kA11y;
  const bool needs_tree = mode != ObsMode::kScreenshot;
  if (needs_image && !screenshot) {
    throw ObservationError("screenshot feed required");
  }
  if (needs_tree && !tree) throw ObservationError("a11y feed required");

  Observation obs;
  obs.mode = mode;
  obs.resolution = resolution;
  FilteredTree filtered;
  if (needs_tree) {
    filtered = FilterA11y(*tree, options);
    obs.a11y_text = LinearizeA11y(filtered);
  }
  switch (mode) {
    case ObsMode::kScreenshot:
    case ObsMode::kHybrid:
      obs.screenshot = *screenshot;
      break;
    case ObsMode::kA11y:
      break;
    case ObsMode::kSom: {
      SomMap som = AssignSomTags(filtered);
      obs.screenshot = RenderSomOverlay(*screenshot, som);
      obs.som_map = std::move(som);
      break;
    }
  }
  return obs;
}

}  // namespace deskbench
