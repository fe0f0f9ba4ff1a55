#include "manohog/roi.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "manohog/error.h"

namespace manohog {

CropBox DetectRoiUnpadded(const PixelMask& mask, double density_threshold) {
  if (!(density_threshold > 0.0 && density_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "density threshold must lie in (0, 1]");
  }
  std::vector<int> row_counts(mask.height(), 0);
  std::vector<int> col_counts(mask.width(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) {
        ++row_counts[y];
        ++col_counts[x];
      }
    }
  }

  auto qualifying_span = [density_threshold](const std::vector<int>& counts,
                                             int length) -> std::pair<int, int> {
    int first = -1;
    int last = -1;
    for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
      if (static_cast<double>(counts[i]) / length > density_threshold) {
        if (first < 0) first = i;
        last = i;
      }
    }
    return {first, last};
  };
  const auto [y0, y1] = qualifying_span(row_counts, mask.width());
  const auto [x0, x1] = qualifying_span(col_counts, mask.height());
  if (y0 < 0 || x0 < 0) {
    throw Error(ErrorCode::kNoSignal,
                "no row or column exceeds kept-pixel density " +
                    std::to_string(density_threshold));
  }
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

CropBox DetectRoi(const RasterImage& image, const ColorList& list,
                  const RoiOptions& options) {
  if (!(options.pad_fraction >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "padding fraction must be non-negative");
  }
  const CropBox core =
      DetectRoiUnpadded(BuildMask(image, list), options.density_threshold);
  const int pad_x = static_cast<int>(std::lround(options.pad_fraction * image.width()));
  const int pad_y = static_cast<int>(std::lround(options.pad_fraction * image.height()));
  const int left = std::max(0, core.x - pad_x);
  const int top = std::max(0, core.y - pad_y);
  const int right = std::min(image.width(), core.x + core.width + pad_x);
  const int bottom = std::min(image.height(), core.y + core.height + pad_y);
  return {left, top, right - left, bottom - top};
}

bool BoxWithin(const CropBox& box, int width, int height) {
  return box.width > 0 && box.height > 0 && box.x >= 0 && box.y >= 0 &&
         box.x <= width - box.width && box.y <= height - box.height;
}

RasterImage Crop(const RasterImage& image, const CropBox& box) {
  if (!BoxWithin(box, image.width(), image.height())) {
    throw Error(ErrorCode::kOutOfBounds,
                "box " + std::to_string(box.x) + "," + std::to_string(box.y) + "," +
                    std::to_string(box.width) + "," + std::to_string(box.height) +
                    " is not inside " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()));
  }
  RasterImage out(box.width, box.height);
  for (int y = 0; y < box.height; ++y) {
    for (int x = 0; x < box.width; ++x) {
      out.at(x, y) = image.at(box.x + x, box.y + y);
    }
  }
  return out;
}

CropBox ParseCropBox(std::string_view text) {
  int values[4];
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 3) == (comma == std::string_view::npos)) {
      throw Error(ErrorCode::kInvalidArgument, "crop box must be x,y,w,h");
    }
    const std::string_view field = text.substr(start, comma - start);
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), values[i]);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "crop box field '" + std::string(field) + "' is not an integer");
    }
    start = comma + 1;
  }
  return {values[0], values[1], values[2], values[3]};
}

}  // namespace manohog
