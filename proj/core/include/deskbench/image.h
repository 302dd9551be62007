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
#include <string_view>
#include <vector>

#include "deskbench/model.h"

namespace deskbench {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// 8-bit RGB raster, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::vector<std::uint8_t>& pixels() { return pixels_; }

  // Drawing clips to the raster; nothing outside it is touched.
  void FillRect(Box box, Rgb c);
  void StrokeRect(Box box, int thickness, Rgb c);
  // 3x5 bitmap glyphs scaled by `scale`; letters render in upper case.
  void DrawText(int x, int y, std::string_view text, int scale, Rgb c);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Pixel width of `text` drawn at `scale` (glyphs advance 4 * scale).
int TextWidth(std::string_view text, int scale);
inline int TextHeight(int scale) { return 5 * scale; }

Bytes EncodePng(const Image& image);
// Throws std::runtime_error("bad screenshot") on undecodable input.
Image DecodePng(const Bytes& png);

}  // namespace deskbench
