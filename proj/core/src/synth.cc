#include "manohog/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "manohog/error.h"
#include "manohog/image_io.h"
#include "manohog/rng.h"

namespace manohog {
namespace {

struct Knot {
  double t;
  Rgb color;
};

constexpr std::array<Knot, 7> kColormap = {{
    {0.0, {0, 0, 255}},
    {0.1, {0, 255, 255}},
    {0.2, {0, 255, 0}},
    {0.3, {160, 255, 0}},
    {0.5, {255, 255, 0}},
    {0.75, {255, 128, 0}},
    {1.0, {255, 0, 0}},
}};

std::uint8_t Lerp(std::uint8_t a, std::uint8_t b, double u) {
  const double v = a + (static_cast<double>(b) - a) * u;
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

const PressureBand& ClassBands::For(Vigor vigor) const {
  switch (vigor) {
    case Vigor::kNormal: return normal;
    case Vigor::kWeak: return weak;
    case Vigor::kFailed: return failed;
  }
  return normal;
}

void ClassBands::Validate() const {
  for (const PressureBand* b : {&normal, &weak, &failed}) {
    if (!(b->lo >= 0.0) || !(b->hi >= b->lo) || !std::isfinite(b->hi)) {
      throw Error(ErrorCode::kInvalidArgument, "pressure bands must satisfy 0 <= lo <= hi");
    }
  }
  if (!(failed.hi < weak.lo) || !(weak.hi < normal.lo)) {
    throw Error(ErrorCode::kInvalidArgument,
                "pressure bands must be ordered failed < weak < normal without overlap");
  }
}

PressureField SynthPressure(const SwallowParams& params, int width, int height) {
  if (width < 32 || height < 32) {
    throw Error(ErrorCode::kTooSmall,
                "synthetic fields need at least 32x32 samples, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (!(params.peak_pressure >= 0.0) || !(params.wave_width > 0.0) ||
      !(params.noise_sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "peak and noise must be non-negative and wave width positive");
  }

  SplitMix64 rng(params.seed);
  auto pick = [&rng](int lo, int hi) {  // inclusive integer range
    return lo + static_cast<int>(rng.UniformBelow(static_cast<std::uint64_t>(hi - lo + 1)));
  };
  const int x0 = pick(width / 10, width / 4);
  const int y0 = pick(height / 10, height / 4);
  const int x1 = pick(3 * width / 4, 9 * width / 10);
  const int y1 = pick(3 * height / 4, 9 * height / 10);
  const double slope = static_cast<double>(y1 - y0) / (x1 - x0);
  const double sigma = params.wave_width * height;
  const double taper = 0.05 * width;

  PressureField field;
  field.width = width;
  field.height = height;
  field.values.resize(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double envelope = 1.0;
      if (x < x0) envelope = std::exp(-0.5 * std::pow((x0 - x) / taper, 2));
      if (x > x1) envelope = std::exp(-0.5 * std::pow((x - x1) / taper, 2));
      const double d = y - (y0 + (x - x0) * slope);
      double value = params.peak_pressure * std::exp(-(d * d) / (2.0 * sigma * sigma)) * envelope;
      if (params.noise_sigma > 0.0) value += params.noise_sigma * rng.Normal();
      field.values[static_cast<std::size_t>(y) * width + x] = std::max(0.0, value);
    }
  }
  return field;
}

Rgb ColormapColor(double t) {
  if (!(t > 0.0)) return kColormap.front().color;
  if (t >= 1.0) return kColormap.back().color;
  for (std::size_t k = 1; k < kColormap.size(); ++k) {
    if (t <= kColormap[k].t) {
      const Knot& a = kColormap[k - 1];
      const Knot& b = kColormap[k];
      const double u = (t - a.t) / (b.t - a.t);
      return {Lerp(a.color.r, b.color.r, u), Lerp(a.color.g, b.color.g, u),
              Lerp(a.color.b, b.color.b, u)};
    }
  }
  return kColormap.back().color;
}

RasterImage RenderColormap(const PressureField& field, double p_max) {
  if (!(p_max > 0.0)) throw Error(ErrorCode::kInvalidArgument, "p_max must be positive");
  RasterImage image(field.width, field.height);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    image.pixels()[i] = ColormapColor(std::clamp(field.values[i] / p_max, 0.0, 1.0));
  }
  return image;
}

const std::vector<Rgb>& DistractorPalette() {
  static const std::vector<Rgb> palette = {
      {0, 255, 255},    // cyan
      {0, 128, 255},    // sky blue
      {128, 0, 255},    // violet
      {0, 200, 160},    // teal
      {255, 255, 255},  // white
      {200, 200, 200},  // light gray
  };
  return palette;
}

void AddDistractors(RasterImage& image, int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const auto& palette = DistractorPalette();
  for (int k = 0; k < count; ++k) {
    const int w = std::max(1, static_cast<int>(image.width() * rng.Uniform(0.05, 0.20)));
    const int h = std::max(1, static_cast<int>(image.height() * rng.Uniform(0.05, 0.20)));
    const int x = static_cast<int>(rng.UniformBelow(static_cast<std::uint64_t>(image.width() - w + 1)));
    const int y = static_cast<int>(rng.UniformBelow(static_cast<std::uint64_t>(image.height() - h + 1)));
    const Rgb color = palette[rng.UniformBelow(palette.size())];
    for (int yy = y; yy < y + h; ++yy) {
      for (int xx = x; xx < x + w; ++xx) image.at(xx, yy) = color;
    }
  }
}

SwallowParams DrawSwallowParams(Vigor vigor, std::uint64_t index, std::uint64_t seed,
                                const SynthOptions& options) {
  SwallowParams params;
  params.vigor = vigor;
  params.seed = DeriveSeed(seed, index);
  SplitMix64 rng(DeriveSeed(params.seed, 0x5eed));
  const PressureBand& band = options.bands.For(vigor);
  params.peak_pressure = rng.Uniform(band.lo, band.hi);
  params.wave_width = rng.Uniform(options.wave_width_lo, options.wave_width_hi);
  params.noise_sigma = options.noise_sigma;
  return params;
}

RasterImage SynthImage(const SwallowParams& params, const SynthOptions& options) {
  RasterImage image = RenderColormap(
      SynthPressure(params, options.width, options.height), options.p_max);
  if (options.distractors > 0) {
    AddDistractors(image, options.distractors, DeriveSeed(params.seed, 0xd15c));
  }
  return image;
}

std::filesystem::path GenerateDataset(int n_per_class, const std::filesystem::path& out_dir,
                                      std::uint64_t seed, const SynthOptions& options) {
  if (n_per_class < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_per_class must be positive");
  }
  options.bands.Validate();
  if (!(options.wave_width_lo > 0.0) || options.wave_width_hi < options.wave_width_lo) {
    throw Error(ErrorCode::kInvalidArgument, "wave width range must be positive and ordered");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + (out_dir / "images").string() + ": " +
                                    ec.message());
  }

  std::vector<LabeledSample> samples;
  std::uint64_t index = 0;
  for (int c = 0; c < kVigorClassCount; ++c) {
    const auto vigor = static_cast<Vigor>(c);
    for (int i = 0; i < n_per_class; ++i, ++index) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%04d.png", std::string(VigorName(vigor)).c_str(), i);
      const std::filesystem::path relative = std::filesystem::path("images") / name;
      SavePng(SynthImage(DrawSwallowParams(vigor, index, seed, options), options),
              out_dir / relative);
      samples.push_back({relative, vigor});
    }
  }
  const std::filesystem::path manifest = out_dir / "manifest.csv";
  WriteManifest(manifest, samples);
  return manifest;
}

}  // namespace manohog
