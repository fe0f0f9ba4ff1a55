#ifndef MANOHOG_COLORMASK_H_
#define MANOHOG_COLORMASK_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "manohog/image.h"

namespace manohog {

// HSV with hue in half-degrees [0, 180] and saturation/value in [0, 255].
struct Hsv {
  int h = 0;
  int s = 0;
  int v = 0;

  friend bool operator==(const Hsv&, const Hsv&) = default;
};

// Hexcone conversion, computed in exact integer arithmetic and rounded half
// up: v = max, s = 255 * (max - min) / max, h = hue_degrees / 2. Achromatic
// pixels get h = 0 (and black gets s = 0). Hues just below 360 degrees round
// to 180, which is why the hue domain is closed at 180.
Hsv RgbToHsv(Rgb pixel);

struct ColorRange {
  std::string name;
  Hsv lower;
  Hsv upper;

  // Inclusive on every component.
  bool Contains(Hsv hsv) const {
    return hsv.h >= lower.h && hsv.h <= upper.h && hsv.s >= lower.s &&
           hsv.s <= upper.s && hsv.v >= lower.v && hsv.v <= upper.v;
  }
};

// Throws InvalidArgument if a bound is outside its domain or lower > upper on
// any component. Hue ranges do not wrap; red is expressed as two ranges.
void ValidateColorRange(const ColorRange& range);

class ColorList {
 public:
  // Throws InvalidArgument for an empty list or an invalid range.
  explicit ColorList(std::vector<ColorRange> ranges);

  const std::vector<ColorRange>& ranges() const { return ranges_; }
  bool Contains(Hsv hsv) const;
  bool Keeps(Rgb pixel) const { return Contains(RgbToHsv(pixel)); }

 private:
  std::vector<ColorRange> ranges_;
};

// The warm-color keep list: red-high [156,43,46]-[180,255,255], red-low
// [0,43,46]-[10,255,255], orange [11,43,46]-[25,255,255], yellow
// [26,43,46]-[34,255,255], plus green [35,43,46]-[45,255,255] unless
// include_green is false.
ColorList DefaultColorList(bool include_green = true);

// One range per line: `name,h_lo,s_lo,v_lo,h_hi,s_hi,v_hi`. `#` lines and
// blank lines are skipped. Errors: FileNotFound, MalformedLine.
ColorList ParseColorList(std::string_view text);
ColorList ReadColorList(const std::filesystem::path& path);
std::string FormatColorList(const ColorList& list);

class PixelMask {
 public:
  PixelMask(int width, int height, bool fill = false);

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const { return bits_[Index(x, y)]; }
  void set(int x, int y, bool keep) { bits_[Index(x, y)] = keep; }
  const std::vector<bool>& bits() const { return bits_; }
  std::size_t CountKept() const;

  friend bool operator==(const PixelMask&, const PixelMask&) = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<bool> bits_;
};

PixelMask BuildMask(const RasterImage& image, const ColorList& list);

// Removed pixels become black. Errors: DimensionMismatch.
RasterImage ApplyMask(const RasterImage& image, const PixelMask& mask);

void SaveMaskPng(const PixelMask& mask, const std::filesystem::path& path);

}  // namespace manohog

#endif  // MANOHOG_COLORMASK_H_
