#ifndef MANOHOG_HOG_H_
#define MANOHOG_HOG_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "manohog/image.h"

namespace manohog {

// Descriptor hyperparameters. Cells are square (cell x cell pixels), blocks
// are block x block cells and slide `stride` cells per step.
struct HogConfig {
  int window_w = 128;
  int window_h = 128;
  int cell = 8;
  int block = 2;
  int stride = 1;
  int bins = 9;
  bool signed_orientation = false;  // 360 degree binning when true
  double gamma = 0.5;
  double clip = 0.2;

  // Throws InvalidArgument naming the first violated constraint: positive
  // window multiples of cell, block >= 1, stride >= 1, bins >= 2, exact block
  // tiling, gamma > 0, clip >= 0, and at least a 3x3 window.
  void Validate() const;

  int CellsX() const { return window_w / cell; }
  int CellsY() const { return window_h / cell; }
  int BlocksX() const { return (CellsX() - block) / stride + 1; }
  int BlocksY() const { return (CellsY() - block) / stride + 1; }
  std::size_t DescriptorLength() const;
  double AngularSpan() const { return signed_orientation ? 360.0 : 180.0; }

  // Canonical little-endian encoding: seven u32 (window_w, window_h, cell,
  // block, stride, bins, signed) followed by gamma and clip as f64. This is
  // the block embedded in model files.
  std::vector<std::uint8_t> Serialize() const;
  // Errors: InvalidArgument when the block has the wrong length.
  static HogConfig Deserialize(std::span<const std::uint8_t> bytes);

  // 64-bit FNV-1a over Serialize(); binds descriptors and models to a config.
  std::uint64_t Digest() const;

  friend bool operator==(const HogConfig&, const HogConfig&) = default;
};

std::string DigestHex(std::uint64_t digest);

// Row-major real-valued image.
struct LuminanceField {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  LuminanceField() = default;
  LuminanceField(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> magnitude;    // >= 0
  std::vector<double> orientation;  // degrees, [0, 180) or [0, 360)

  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

struct Descriptor {
  std::vector<double> values;
  std::uint64_t config_digest = 0;

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

// L = (0.299 r + 0.587 g + 0.114 b) / 255, output L^gamma.
LuminanceField GammaNormalize(const RasterImage& image, double gamma);

// Ix = I(x+1,y) - I(x-1,y), Iy = I(x,y+1) - I(x,y-1) in the interior and
// one-sided differences on the border rows/columns. magnitude = hypot(Ix, Iy);
// orientation = atan2(Iy, Ix) in degrees mapped to [0, 360), folded into
// [0, 180) when unsigned, and 0 where both differences vanish.
// Errors: ImageTooSmall below 3x3.
GradientField ComputeGradients(const LuminanceField& field, bool signed_orientation);

// Histogram of the config.cell x config.cell pixels whose top-left pixel is
// (origin_x, origin_y). Each pixel's magnitude is split linearly between the
// two nearest bin centres, (i + 0.5) * span / bins, wrapping around the span.
// Pixels are accumulated in row-major order. Errors: OutOfBounds.
std::vector<double> CellHistogram(const GradientField& field, int origin_x,
                                  int origin_y, const HogConfig& config);

// Concatenates the cell histograms of one block and applies L2-Hys:
// v / sqrt(|v|^2 + eps^2), clip at `clip`, renormalize the same way. eps is
// 1e-5 * |v| (relative), so an all-zero block stays zero. Errors:
// InvalidArgument for an empty list or histograms of unequal length.
std::vector<double> BlockDescriptor(std::span<const std::vector<double>> histograms,
                                    double clip);

// All cell histograms of a window-sized gradient field, indexed
// [cy * CellsX() + cx].
std::vector<std::vector<double>> CellHistograms(const GradientField& field,
                                                const HogConfig& config);

// Gradient -> cell histograms -> blocks in row-major block order (cells
// row-major inside each block) on a field that is already window-sized.
// Errors: DimensionMismatch if the field is not window_w x window_h.
Descriptor DescriptorFromLuminance(const LuminanceField& field, const HogConfig& config);

// Resize (bilinear) -> GammaNormalize -> DescriptorFromLuminance.
Descriptor ComputeDescriptor(const RasterImage& image, const HogConfig& config);

// Human-readable `key=value` lines with keys window_w, window_h, cell,
// block, stride, bins, signed, gamma, clip. Unknown keys are rejected.
std::string FormatHogConfig(const HogConfig& config);
HogConfig ParseHogConfig(std::string_view text);

// Applies one key/value pair (keys as in FormatHogConfig). Returns false for
// unknown keys; throws InvalidArgument for unparsable values.
bool SetHogConfigValue(HogConfig& config, std::string_view key, std::string_view value);

}  // namespace manohog

#endif  // MANOHOG_HOG_H_
