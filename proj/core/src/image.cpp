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

#include "deskbench/image.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace deskbench {

namespace {

// Each glyph is five rows of three bits, most significant bit on the left.
struct Glyph {
  char c;
  std::array<std::uint8_t, 5> rows;
};

constexpr Glyph kGlyphs[] = {
    {'0', {7, 5, 5, 5, 7}}, {'1', {2, 6, 2, 2, 7}}, {'2', {7, 1, 7, 4, 7}},
    {'3', {7, 1, 7, 1, 7}}, {'4', {5, 5, 7, 1, 1}}, {'5', {7, 4, 7, 1, 7}},
    {'6', {7, 4, 7, 5, 7}}, {'7', {7, 1, 1, 1, 1}}, {'8', {7, 5, 7, 5, 7}},
    {'9', {7, 5, 7, 1, 7}}, {'A', {2, 5, 7, 5, 5}}, {'B', {6, 5, 6, 5, 6}},
    {'C', {3, 4, 4, 4, 3}}, {'D', {6, 5, 5, 5, 6}}, {'E', {7, 4, 6, 4, 7}},
    {'F', {7, 4, 6, 4, 4}}, {'G', {3, 4, 5, 5, 3}}, {'H', {5, 5, 7, 5, 5}},
    {'I', {7, 2, 2, 2, 7}}, {'J', {1, 1, 1, 5, 2}}, {'K', {5, 5, 6, 5, 5}},
    {'L', {4, 4, 4, 4, 7}}, {'M', {5, 7, 7, 5, 5}}, {'N', {6, 5, 5, 5, 5}},
    {'O', {2, 5, 5, 5, 2}}, {'P', {6, 5, 6, 4, 4}}, {'Q', {2, 5, 5, 6, 3}},
    {'R', {6, 5, 6, 5, 5}}, {'S', {3, 4, 2, 1, 6}}, {'T', {7, 2, 2, 2, 2}},
    {'U', {5, 5, 5, 5, 7}}, {'V', {5, 5, 5, 5, 2}}, {'W', {5, 5, 7, 7, 5}},
    {'X', {5, 5, 2, 5, 5}}, {'Y', {5, 5, 2, 2, 2}}, {'Z', {7, 1, 2, 4, 7}},
    {'+', {0, 2, 7, 2, 0}}, {'-', {0, 0, 7, 0, 0}}, {'*', {0, 5, 2, 5, 0}},
    {'/', {1, 1, 2, 4, 4}}, {'=', {0, 7, 0, 7, 0}}, {'.', {0, 0, 0, 0, 2}},
    {',', {0, 0, 0, 2, 4}}, {':', {0, 2, 0, 2, 0}}, {'(', {1, 2, 2, 2, 1}},
    {')', {4, 2, 2, 2, 4}}, {'_', {0, 0, 0, 0, 7}}, {'@', {2, 5, 7, 4, 3}},
    {'#', {5, 7, 5, 7, 5}}, {'?', {7, 1, 2, 0, 2}}, {'!', {2, 2, 2, 0, 2}},
    {'%', {5, 1, 2, 4, 5}}, {'[', {3, 2, 2, 2, 3}}, {']', {6, 2, 2, 2, 6}},
    {' ', {0, 0, 0, 0, 0}},
};

const Glyph& GlyphFor(char c) {
  char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& g : kGlyphs) {
    if (g.c == up) return g;
  }
  static const Glyph kUnknown = {'?', {7, 1, 2, 0, 2}};
  return kUnknown;
}

}  // namespace

Image::Image(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("empty image");
  pixels_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const size_t i = (static_cast<size_t>(y) * width_ + x) * 3;
  return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  const size_t i = (static_cast<size_t>(y) * width_ + x) * 3;
  pixels_[i] = c.r;
  pixels_[i + 1] = c.g;
  pixels_[i + 2] = c.b;
}

void Image::FillRect(Box box, Rgb c) {
  const int x0 = std::max(box.x, 0);
  const int y0 = std::max(box.y, 0);
  const int x1 = std::min(box.x + box.w, width_);
  const int y1 = std::min(box.y + box.h, height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y, c);
  }
}

void Image::StrokeRect(Box box, int thickness, Rgb c) {
  FillRect({box.x, box.y, box.w, thickness}, c);
  FillRect({box.x, box.y + box.h - thickness, box.w, thickness}, c);
  FillRect({box.x, box.y, thickness, box.h}, c);
  FillRect({box.x + box.w - thickness, box.y, thickness, box.h}, c);
}

void Image::DrawText(int x, int y, std::string_view text, int scale, Rgb c) {
  int cx = x;
  for (char ch : text) {
    const Glyph& g = GlyphFor(ch);
    for (int row = 0; row < 5; ++row) {
      for (int col = 0; col < 3; ++col) {
        if (g.rows[row] & (4 >> col)) {
          FillRect({cx + col * scale, y + row * scale, scale, scale}, c);
        }
      }
    }
    cx += 4 * scale;
  }
}

int TextWidth(std::string_view text, int scale) {
  if (text.empty()) return 0;
  return static_cast<int>(text.size()) * 4 * scale - scale;
}

Bytes EncodePng(const Image& image) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0,
                                 image.pixels().data(), 0, nullptr)) {
    throw std::runtime_error(std::string("png encode failed: ") + png.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0,
                                 image.pixels().data(), 0, nullptr)) {
    throw std::runtime_error(std::string("png encode failed: ") + png.message);
  }
  out.resize(size);
  return out;
}

Image DecodePng(const Bytes& data) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (data.empty() ||
      !png_image_begin_read_from_memory(&png, data.data(), data.size())) {
    throw std::runtime_error("bad screenshot");
  }
  png.format = PNG_FORMAT_RGB;
  if (png.width == 0 || png.height == 0 || png.width > 16384 ||
      png.height > 16384) {
    png_image_free(&png);
    throw std::runtime_error("bad screenshot");
  }
  Image img(static_cast<int>(png.width), static_cast<int>(png.height));
  if (!png_image_finish_read(&png, nullptr, img.pixels().data(), 0, nullptr)) {
    png_image_free(&png);
    throw std::runtime_error("bad screenshot");
  }
  return img;
}

}  // namespace deskbench
