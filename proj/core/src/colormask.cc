#include "manohog/colormask.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "manohog/error.h"
#include "manohog/image_io.h"

namespace manohog {
namespace {

// round(num / den) for num >= 0, den > 0, halves rounded up.
int RoundRatio(int num, int den) { return (2 * num + den) / (2 * den); }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Hsv RgbToHsv(Rgb pixel) {
  const int r = pixel.r;
  const int g = pixel.g;
  const int b = pixel.b;
  const int max = std::max({r, g, b});
  const int min = std::min({r, g, b});
  const int delta = max - min;

  Hsv out;
  out.v = max;
  if (max == 0 || delta == 0) return out;
  out.s = RoundRatio(255 * delta, max);

  // Half-degree hue as the exact fraction num / delta, shifted non-negative.
  int num = 0;
  if (max == r) {
    num = 30 * (g - b);
    if (num < 0) num += 180 * delta;
  } else if (max == g) {
    num = 60 * delta + 30 * (b - r);
  } else {
    num = 120 * delta + 30 * (r - g);
  }
  out.h = RoundRatio(num, delta);
  return out;
}

void ValidateColorRange(const ColorRange& range) {
  auto in = [](int v, int hi) { return v >= 0 && v <= hi; };
  const Hsv& lo = range.lower;
  const Hsv& hi = range.upper;
  if (!in(lo.h, 180) || !in(hi.h, 180) || !in(lo.s, 255) || !in(hi.s, 255) ||
      !in(lo.v, 255) || !in(hi.v, 255)) {
    throw Error(ErrorCode::kInvalidArgument,
                "color range '" + range.name + "' has a bound outside its domain");
  }
  if (lo.h > hi.h || lo.s > hi.s || lo.v > hi.v) {
    throw Error(ErrorCode::kInvalidArgument,
                "color range '" + range.name + "' has lower > upper");
  }
}

ColorList::ColorList(std::vector<ColorRange> ranges) : ranges_(std::move(ranges)) {
  if (ranges_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "color list must not be empty");
  }
  for (const ColorRange& r : ranges_) ValidateColorRange(r);
}

bool ColorList::Contains(Hsv hsv) const {
  return std::any_of(ranges_.begin(), ranges_.end(),
                     [&](const ColorRange& r) { return r.Contains(hsv); });
}

ColorList DefaultColorList(bool include_green) {
  std::vector<ColorRange> ranges = {
      {"red-high", {156, 43, 46}, {180, 255, 255}},
      {"red-low", {0, 43, 46}, {10, 255, 255}},
      {"orange", {11, 43, 46}, {25, 255, 255}},
      {"yellow", {26, 43, 46}, {34, 255, 255}},
  };
  if (include_green) ranges.push_back({"green", {35, 43, 46}, {45, 255, 255}});
  return ColorList(std::move(ranges));
}

ColorList ParseColorList(std::string_view text) {
  std::vector<ColorRange> ranges;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(Trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const std::string where = "color list line " + std::to_string(line_number);
    if (fields.size() != 7 || fields[0].empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  where + ": expected name,h_lo,s_lo,v_lo,h_hi,s_hi,v_hi");
    }
    int values[6];
    for (int i = 0; i < 6; ++i) {
      const std::string_view f = fields[i + 1];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), values[i]);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw Error(ErrorCode::kMalformedLine,
                    where + ": '" + std::string(f) + "' is not an integer");
      }
    }
    ranges.push_back({std::string(fields[0]),
                      {values[0], values[1], values[2]},
                      {values[3], values[4], values[5]}});
  }
  return ColorList(std::move(ranges));
}

ColorList ReadColorList(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseColorList(buffer.str());
}

std::string FormatColorList(const ColorList& list) {
  std::ostringstream out;
  for (const ColorRange& r : list.ranges()) {
    out << r.name << ',' << r.lower.h << ',' << r.lower.s << ',' << r.lower.v << ','
        << r.upper.h << ',' << r.upper.s << ',' << r.upper.v << '\n';
  }
  return out.str();
}

PixelMask::PixelMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * height, fill);
}

std::size_t PixelMask::CountKept() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

PixelMask BuildMask(const RasterImage& image, const ColorList& list) {
  PixelMask mask(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      mask.set(x, y, list.Keeps(image.at(x, y)));
    }
  }
  return mask;
}

RasterImage ApplyMask(const RasterImage& image, const PixelMask& mask) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask " + std::to_string(mask.width()) + "x" +
                    std::to_string(mask.height()) + " vs image " +
                    std::to_string(image.width()) + "x" +
                    std::to_string(image.height()));
  }
  RasterImage out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!mask.at(x, y)) out.at(x, y) = Rgb{0, 0, 0};
    }
  }
  return out;
}

void SaveMaskPng(const PixelMask& mask, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeBitmapPng(mask.width(), mask.height(), mask.bits()));
}

}  // namespace manohog
