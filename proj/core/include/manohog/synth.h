#ifndef MANOHOG_SYNTH_H_
#define MANOHOG_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "manohog/image.h"
#include "manohog/manifest.h"

namespace manohog {

// Peak-pressure band per class, in mmHg-like units. Bands must not overlap.
struct PressureBand {
  double lo = 0.0;
  double hi = 0.0;
};

struct ClassBands {
  PressureBand normal{60.0, 150.0};
  PressureBand weak{15.0, 45.0};
  PressureBand failed{0.0, 10.0};

  const PressureBand& For(Vigor vigor) const;
  // Throws InvalidArgument for inverted, negative or overlapping bands.
  void Validate() const;
};

struct SwallowParams {
  Vigor vigor = Vigor::kNormal;
  double peak_pressure = 100.0;
  double wave_width = 0.06;  // Gaussian sigma as a fraction of image height
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

struct PressureField {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major, >= 0

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Time runs along x, sensor position along y. A contraction front runs from an
// anchor (x0, y0) in the upper-left region to (x1, y1) in the lower-right
// region, both drawn from the seed on integer pixels. The field is
//   P * exp(-d^2 / (2 s^2)) * envelope(x) + noise,
// with d the vertical distance to the front line, s = wave_width * height,
// envelope 1 on [x0, x1] and a Gaussian taper outside, and i.i.d.
// N(0, noise_sigma) noise clamped at 0. The anchor pixel carries exactly P
// when noise_sigma is 0. Errors: TooSmall (w or h < 32); InvalidArgument.
PressureField SynthPressure(const SwallowParams& params, int width, int height);

// Piecewise-linear pseudocolor, cool to warm:
//   t = 0     blue   (0, 0, 255)
//   t = 0.1   cyan   (0, 255, 255)
//   t = 0.2   green  (0, 255, 0)
//   t = 0.3   lime   (160, 255, 0)
//   t = 0.5   yellow (255, 255, 0)
//   t = 0.75  orange (255, 128, 0)
//   t = 1     red    (255, 0, 0)
// Hue falls monotonically from 120 to 0 on the half-degree scale. Every
// color from t = 0.3 up lies in the default keep list; t <= 0.05 does not.
Rgb ColormapColor(double t);

// t = clamp(value / p_max, 0, 1) per sample. Errors: InvalidArgument when
// p_max <= 0.
RasterImage RenderColormap(const PressureField& field, double p_max);

// Paints `count` filled rectangles (5-20% of each dimension) in colors that
// lie outside the default keep list: cool hues and low-saturation grays.
void AddDistractors(RasterImage& image, int count, std::uint64_t seed);

// Colors used by AddDistractors.
const std::vector<Rgb>& DistractorPalette();

struct SynthOptions {
  int width = 128;
  int height = 128;
  double p_max = 50.0;
  double noise_sigma = 4.0;
  double wave_width_lo = 0.04;
  double wave_width_hi = 0.08;
  int distractors = 0;
  ClassBands bands;
};

// Draws the parameters of image `index` of a dataset: per-image seed
// DeriveSeed(seed, index), peak uniform in the class band, wave width uniform
// in [wave_width_lo, wave_width_hi].
SwallowParams DrawSwallowParams(Vigor vigor, std::uint64_t index, std::uint64_t seed,
                                const SynthOptions& options);

// Full image for one parameter set, including distractors.
RasterImage SynthImage(const SwallowParams& params, const SynthOptions& options);

// Writes images/<class>_<nnnn>.png for every class (normal, weak, failed in
// that order, n_per_class each) and manifest.csv into out_dir; returns the
// manifest path. Output bytes depend only on the arguments. Errors: Io,
// InvalidArgument.
std::filesystem::path GenerateDataset(int n_per_class, const std::filesystem::path& out_dir,
                                      std::uint64_t seed, const SynthOptions& options = {});

}  // namespace manohog

#endif  // MANOHOG_SYNTH_H_
