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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deskbench/model.h"

namespace deskbench {

enum class SegmentKind { kProse, kCodeBlock, kSpecial };

struct Segment {
  SegmentKind kind = SegmentKind::kProse;
  // Exact slice of the input, fences included.
  std::string text;
  // Contents between the fences with any language tag removed; for special
  // codes, the trimmed token ("WAIT 3").
  std::string body;
};

struct Segments {
  std::vector<Segment> segments;
  std::vector<std::string> diagnostics;
};

// Splits a model reply into prose, fenced code blocks and fenced special
// codes (DONE, FAIL, WAIT [n], ANS s, API name args). Concatenating the
// segment texts reproduces `raw` exactly.
Segments ExtractSegments(std::string_view raw);

enum class CoordinateScale { kUnit, kPermille };
enum class GrounderDialect { kPointTag, kBareCoordinate, kVerbScript };

struct GrounderProfile {
  std::string name;
  CoordinateScale scale = CoordinateScale::kPermille;
  GrounderDialect dialect = GrounderDialect::kPointTag;
};

std::span<const GrounderProfile> BuiltinGrounderProfiles();
const GrounderProfile* FindGrounderProfile(std::string_view name);

// Scales a model coordinate to pixels: unit values multiply by the
// dimension, permille values by dimension/1000. Rounds to nearest with ties
// away from zero, then clamps into [0, dim-1].
PixelPoint NormalizeCoords(RawPoint p, CoordinateScale scale, Resolution res,
                           std::vector<std::string>* diagnostics = nullptr);

// Parses a code-block body of scripted GUI calls. Dotted qualifiers are
// stripped; statements that are not GUI verbs are skipped. Out-of-bounds
// pixel coordinates are clamped and reported in `diagnostics`.
std::vector<GuiCommand> ParseGuiScript(
    std::string_view code, const SomMap* som, Resolution res = {},
    std::vector<std::string>* diagnostics = nullptr);

// Total: every input yields exactly one Action, noop when nothing parses.
Action ParseModelOutput(std::string_view raw, const SomMap* som,
                        Interface interface, Resolution res = {});

// True when a planner reply can run without grounding: it carries a special
// code, or its first code block is something other than a GUI script.
bool IsDirectPrimitive(std::string_view raw);

Action ParseGrounderOutput(std::string_view text,
                           const GrounderProfile& profile,
                           Resolution res = {});

}  // namespace deskbench
