#include "manohog/hog.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>

#include "manohog/error.h"
#include "manohog/kv_config.h"

namespace manohog {
namespace {

constexpr double kRelativeEpsilon = 1e-5;
constexpr std::size_t kSerializedHogConfigSize = 7 * 4 + 2 * 8;

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutF64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t GetU32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

double GetF64(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

// Scales v to unit L2 norm with the relative epsilon guard; zero stays zero.
void NormalizeL2(std::vector<double>& v) {
  double sum_sq = 0.0;
  for (double x : v) sum_sq += x * x;
  if (sum_sq == 0.0) return;
  const double denom = std::sqrt(sum_sq * (1.0 + kRelativeEpsilon * kRelativeEpsilon));
  for (double& x : v) x /= denom;
}

}  // namespace

void HogConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "HogConfig: " + what);
  };
  if (cell <= 0) fail("cell must be positive");
  if (window_w <= 0 || window_h <= 0) fail("window dimensions must be positive");
  if (window_w % cell != 0 || window_h % cell != 0) {
    fail("window dimensions must be multiples of cell");
  }
  if (block < 1) fail("block must be >= 1");
  if (stride < 1) fail("stride must be >= 1");
  if (bins < 2) fail("bins must be >= 2");
  if (CellsX() < block || CellsY() < block) fail("window is smaller than one block");
  if ((CellsX() - block) % stride != 0 || (CellsY() - block) % stride != 0) {
    fail("block positions do not tile the window exactly at this stride");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail("gamma must be positive");
  if (!(clip >= 0.0) || !std::isfinite(clip)) fail("clip must be non-negative");
  if (window_w < 3 || window_h < 3) fail("window must be at least 3x3");
}

std::size_t HogConfig::DescriptorLength() const {
  return static_cast<std::size_t>(BlocksX()) * BlocksY() * block * block * bins;
}

std::vector<std::uint8_t> HogConfig::Serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(kSerializedHogConfigSize);
  for (int v : {window_w, window_h, cell, block, stride, bins}) {
    PutU32(out, static_cast<std::uint32_t>(v));
  }
  PutU32(out, signed_orientation ? 1u : 0u);
  PutF64(out, gamma);
  PutF64(out, clip);
  return out;
}

HogConfig HogConfig::Deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kSerializedHogConfigSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "HogConfig block must be " + std::to_string(kSerializedHogConfigSize) +
                    " bytes, got " + std::to_string(bytes.size()));
  }
  HogConfig c;
  c.window_w = static_cast<int>(GetU32(bytes, 0));
  c.window_h = static_cast<int>(GetU32(bytes, 4));
  c.cell = static_cast<int>(GetU32(bytes, 8));
  c.block = static_cast<int>(GetU32(bytes, 12));
  c.stride = static_cast<int>(GetU32(bytes, 16));
  c.bins = static_cast<int>(GetU32(bytes, 20));
  c.signed_orientation = GetU32(bytes, 24) != 0;
  c.gamma = GetF64(bytes, 28);
  c.clip = GetF64(bytes, 36);
  return c;
}

std::uint64_t HogConfig::Digest() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::uint8_t byte : Serialize()) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string DigestHex(std::uint64_t digest) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(digest));
  return buffer;
}

LuminanceField GammaNormalize(const RasterImage& image, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  LuminanceField field(image.width(), image.height());
  for (std::size_t i = 0; i < image.pixels().size(); ++i) {
    const Rgb& p = image.pixels()[i];
    const double luma = (0.299 * p.r + 0.587 * p.g + 0.114 * p.b) / 255.0;
    field.values[i] = std::pow(luma, gamma);
  }
  return field;
}

GradientField ComputeGradients(const LuminanceField& field, bool signed_orientation) {
  if (field.width < 3 || field.height < 3) {
    throw Error(ErrorCode::kImageTooSmall,
                "gradients need at least 3x3 pixels, got " + std::to_string(field.width) +
                    "x" + std::to_string(field.height));
  }
  const int w = field.width;
  const int h = field.height;
  const double span = signed_orientation ? 360.0 : 180.0;

  GradientField out;
  out.width = w;
  out.height = h;
  out.magnitude.resize(static_cast<std::size_t>(w) * h);
  out.orientation.resize(out.magnitude.size());
  for (int y = 0; y < h; ++y) {
    const int up = y == 0 ? 0 : y - 1;
    const int down = y == h - 1 ? h - 1 : y + 1;
    for (int x = 0; x < w; ++x) {
      const int left = x == 0 ? 0 : x - 1;
      const int right = x == w - 1 ? w - 1 : x + 1;
      const double ix = field.at(right, y) - field.at(left, y);
      const double iy = field.at(x, down) - field.at(x, up);
      const std::size_t i = out.Index(x, y);
      out.magnitude[i] = std::hypot(ix, iy);
      if (ix == 0.0 && iy == 0.0) {
        out.orientation[i] = 0.0;
        continue;
      }
      double angle = std::atan2(iy, ix) * (180.0 / std::numbers::pi);
      angle = std::fmod(angle + 360.0, span);
      if (angle >= span) angle -= span;
      if (angle < 0.0) angle = 0.0;
      out.orientation[i] = angle;
    }
  }
  return out;
}

std::vector<double> CellHistogram(const GradientField& field, int origin_x,
                                  int origin_y, const HogConfig& config) {
  if (origin_x < 0 || origin_y < 0 || origin_x + config.cell > field.width ||
      origin_y + config.cell > field.height) {
    throw Error(ErrorCode::kOutOfBounds,
                "cell at (" + std::to_string(origin_x) + "," + std::to_string(origin_y) +
                    ") leaves the gradient field");
  }
  const double bin_width = config.AngularSpan() / config.bins;
  std::vector<double> hist(config.bins, 0.0);
  for (int y = origin_y; y < origin_y + config.cell; ++y) {
    for (int x = origin_x; x < origin_x + config.cell; ++x) {
      const std::size_t i = field.Index(x, y);
      const double m = field.magnitude[i];
      if (m == 0.0) continue;
      // Position relative to bin centres: centre k sits at (k + 0.5) * width.
      const double pos = field.orientation[i] / bin_width - 0.5;
      const double lower = std::floor(pos);
      const double frac = pos - lower;
      const int lo = ((static_cast<int>(lower) % config.bins) + config.bins) % config.bins;
      const int hi = (lo + 1) % config.bins;
      hist[lo] += (1.0 - frac) * m;
      hist[hi] += frac * m;
    }
  }
  return hist;
}

std::vector<double> BlockDescriptor(std::span<const std::vector<double>> histograms,
                                    double clip) {
  if (histograms.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "block needs at least one histogram");
  }
  const std::size_t bins = histograms.front().size();
  std::vector<double> v;
  v.reserve(histograms.size() * bins);
  for (const auto& h : histograms) {
    if (h.size() != bins) {
      throw Error(ErrorCode::kInvalidArgument, "cell histograms differ in length");
    }
    v.insert(v.end(), h.begin(), h.end());
  }
  NormalizeL2(v);
  for (double& x : v) x = std::min(x, clip);
  NormalizeL2(v);
  return v;
}

std::vector<std::vector<double>> CellHistograms(const GradientField& field,
                                                const HogConfig& config) {
  std::vector<std::vector<double>> cells;
  cells.reserve(static_cast<std::size_t>(config.CellsX()) * config.CellsY());
  for (int cy = 0; cy < config.CellsY(); ++cy) {
    for (int cx = 0; cx < config.CellsX(); ++cx) {
      cells.push_back(CellHistogram(field, cx * config.cell, cy * config.cell, config));
    }
  }
  return cells;
}

Descriptor DescriptorFromLuminance(const LuminanceField& field, const HogConfig& config) {
  config.Validate();
  if (field.width != config.window_w || field.height != config.window_h) {
    throw Error(ErrorCode::kDimensionMismatch,
                "luminance field " + std::to_string(field.width) + "x" +
                    std::to_string(field.height) + " is not the configured window");
  }
  const GradientField gradients = ComputeGradients(field, config.signed_orientation);
  const auto cells = CellHistograms(gradients, config);

  Descriptor out;
  out.config_digest = config.Digest();
  out.values.reserve(config.DescriptorLength());
  std::vector<std::vector<double>> block_cells(
      static_cast<std::size_t>(config.block) * config.block);
  for (int by = 0; by < config.BlocksY(); ++by) {
    for (int bx = 0; bx < config.BlocksX(); ++bx) {
      std::size_t k = 0;
      for (int dy = 0; dy < config.block; ++dy) {
        for (int dx = 0; dx < config.block; ++dx) {
          const int cx = bx * config.stride + dx;
          const int cy = by * config.stride + dy;
          block_cells[k++] = cells[static_cast<std::size_t>(cy) * config.CellsX() + cx];
        }
      }
      const std::vector<double> block = BlockDescriptor(block_cells, config.clip);
      out.values.insert(out.values.end(), block.begin(), block.end());
    }
  }
  return out;
}

Descriptor ComputeDescriptor(const RasterImage& image, const HogConfig& config) {
  config.Validate();
  const RasterImage resized = ResizeBilinear(image, config.window_w, config.window_h);
  return DescriptorFromLuminance(GammaNormalize(resized, config.gamma), config);
}

bool SetHogConfigValue(HogConfig& config, std::string_view key, std::string_view value) {
  const std::string what = "hog." + std::string(key);
  if (key == "window_w") config.window_w = ParseIntValue(value, what);
  else if (key == "window_h") config.window_h = ParseIntValue(value, what);
  else if (key == "cell") config.cell = ParseIntValue(value, what);
  else if (key == "block") config.block = ParseIntValue(value, what);
  else if (key == "stride") config.stride = ParseIntValue(value, what);
  else if (key == "bins") config.bins = ParseIntValue(value, what);
  else if (key == "signed") config.signed_orientation = ParseBoolValue(value, what);
  else if (key == "gamma") config.gamma = ParseDoubleValue(value, what);
  else if (key == "clip") config.clip = ParseDoubleValue(value, what);
  else return false;
  return true;
}

std::string FormatHogConfig(const HogConfig& config) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append("\n");
  };
  line("window_w", std::to_string(config.window_w));
  line("window_h", std::to_string(config.window_h));
  line("cell", std::to_string(config.cell));
  line("block", std::to_string(config.block));
  line("stride", std::to_string(config.stride));
  line("bins", std::to_string(config.bins));
  line("signed", config.signed_orientation ? "true" : "false");
  line("gamma", FormatDouble(config.gamma));
  line("clip", FormatDouble(config.clip));
  return out;
}

HogConfig ParseHogConfig(std::string_view text) {
  HogConfig config;
  for (const auto& [key, value] : ParseKeyValues(text)) {
    if (!SetHogConfigValue(config, key, value)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown HogConfig key '" + key + "'");
    }
  }
  config.Validate();
  return config;
}

}  // namespace manohog
