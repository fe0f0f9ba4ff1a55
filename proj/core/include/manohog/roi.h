#ifndef MANOHOG_ROI_H_
#define MANOHOG_ROI_H_

#include <optional>
#include <string_view>

#include "manohog/colormask.h"
#include "manohog/image.h"

namespace manohog {

struct CropBox {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const CropBox&, const CropBox&) = default;
};

struct RoiOptions {
  // A row (column) qualifies when its kept-pixel fraction exceeds this.
  double density_threshold = 0.05;
  // Padding on each side, as a fraction of the image width (height).
  double pad_fraction = 0.02;
};

// Bounding box of the qualifying rows and columns of the color mask, before
// padding. Errors: NoSignal when no row or no column qualifies;
// InvalidArgument when the threshold is outside (0, 1].
CropBox DetectRoiUnpadded(const PixelMask& mask, double density_threshold);

// DetectRoiUnpadded on BuildMask(image, list), then grown by
// round(pad_fraction * dimension) on every side and clamped to the image.
CropBox DetectRoi(const RasterImage& image, const ColorList& list,
                  const RoiOptions& options = {});

bool BoxWithin(const CropBox& box, int width, int height);

// Errors: OutOfBounds if the box is empty or leaves the image.
RasterImage Crop(const RasterImage& image, const CropBox& box);

// Parses "x,y,w,h". Errors: InvalidArgument.
CropBox ParseCropBox(std::string_view text);

}  // namespace manohog

#endif  // MANOHOG_ROI_H_
