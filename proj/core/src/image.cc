#include "manohog/image.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "manohog/error.h"

namespace manohog {
namespace {

void CheckDimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  CheckDimensions(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

RasterImage::RasterImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  CheckDimensions(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "pixel count " + std::to_string(pixels_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

RasterImage ResizeBilinear(const RasterImage& image, int width, int height) {
  CheckDimensions(width, height);
  if (image.width() == width && image.height() == height) return image;

  const double sx = static_cast<double>(image.width()) / width;
  const double sy = static_cast<double>(image.height()) / height;
  RasterImage out(width, height);
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0,
                                 static_cast<double>(image.height() - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0,
                                   static_cast<double>(image.width() - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double wx = fx - x0;
      auto blend = [&](std::uint8_t Rgb::*channel) {
        const double top = (1.0 - wx) * (image.at(x0, y0).*channel) +
                           wx * (image.at(x1, y0).*channel);
        const double bottom = (1.0 - wx) * (image.at(x0, y1).*channel) +
                              wx * (image.at(x1, y1).*channel);
        const double v = (1.0 - wy) * top + wy * bottom;
        return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      };
      out.at(x, y) = {blend(&Rgb::r), blend(&Rgb::g), blend(&Rgb::b)};
    }
  }
  return out;
}

RasterImage Rotate180(const RasterImage& image) {
  std::vector<Rgb> pixels(image.pixels().rbegin(), image.pixels().rend());
  return RasterImage(image.width(), image.height(), std::move(pixels));
}

}  // namespace manohog
