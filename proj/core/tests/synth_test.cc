#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "manohog/colormask.h"
#include "manohog/image_io.h"
#include "manohog/manifest.h"
#include "manohog/synth.h"
#include "test_support.h"

namespace manohog {
namespace {

namespace fs = std::filesystem;

TEST(SynthPressureTest, FailedWithZeroPeakIsFlat) {
  SwallowParams p;
  p.vigor = Vigor::kFailed;
  p.peak_pressure = 0.0;
  const PressureField f = SynthPressure(p, 64, 48);
  EXPECT_EQ(f.width, 64);
  EXPECT_EQ(f.height, 48);
  for (double v : f.values) EXPECT_EQ(v, 0.0);
}

TEST(SynthPressureTest, NoiselessMaximumEqualsPeak) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SwallowParams p;
    p.peak_pressure = 37.5 + seed;
    p.seed = seed;
    const PressureField f = SynthPressure(p, 96, 80);
    EXPECT_NEAR(*std::max_element(f.values.begin(), f.values.end()), p.peak_pressure, 1e-9);
    for (double v : f.values) EXPECT_GE(v, 0.0);
  }
}

TEST(SynthPressureTest, DeterministicAndSeedSensitive) {
  SwallowParams p;
  p.noise_sigma = 3.0;
  p.seed = 5;
  EXPECT_EQ(SynthPressure(p, 64, 64).values, SynthPressure(p, 64, 64).values);
  SwallowParams q = p;
  q.seed = 6;
  EXPECT_NE(SynthPressure(p, 64, 64).values, SynthPressure(q, 64, 64).values);
}

TEST(SynthPressureTest, Errors) {
  EXPECT_ERROR_CODE(SynthPressure(SwallowParams{}, 31, 64), ErrorCode::kTooSmall);
  SwallowParams p;
  p.peak_pressure = -1.0;
  EXPECT_ERROR_CODE(SynthPressure(p, 64, 64), ErrorCode::kInvalidArgument);
}

TEST(ColormapTest, Endpoints) {
  EXPECT_EQ(ColormapColor(0.0), (Rgb{0, 0, 255}));
  EXPECT_EQ(ColormapColor(1.0), (Rgb{255, 0, 0}));
  EXPECT_EQ(ColormapColor(-3.0), (Rgb{0, 0, 255}));
  EXPECT_EQ(ColormapColor(7.0), (Rgb{255, 0, 0}));
  PressureField zero{4, 3, std::vector<double>(12, 0.0)};
  const RasterImage blue = RenderColormap(zero, 50.0);
  for (const Rgb& p : blue.pixels()) EXPECT_EQ(p, (Rgb{0, 0, 255}));
  PressureField top{1, 1, {50.0}};
  EXPECT_EQ(RenderColormap(top, 50.0).at(0, 0), (Rgb{255, 0, 0}));
  EXPECT_ERROR_CODE(RenderColormap(top, 0.0), ErrorCode::kInvalidArgument);
}

TEST(ColormapTest, MidpointIsInTheYellowRange) {
  const Hsv hsv = RgbToHsv(ColormapColor(0.5));
  const ColorList list = DefaultColorList();
  const auto& yellow = *std::find_if(list.ranges().begin(), list.ranges().end(),
                                     [](const ColorRange& r) { return r.name == "yellow"; });
  EXPECT_TRUE(yellow.Contains(hsv)) << hsv.h << "," << hsv.s << "," << hsv.v;
}

TEST(ColormapTest, HueFallsMonotonically) {
  int previous = 120;
  for (int i = 0; i <= 1000; ++i) {
    const Hsv hsv = RgbToHsv(ColormapColor(i / 1000.0));
    ASSERT_LE(hsv.h, previous) << "t=" << i / 1000.0;
    previous = hsv.h;
  }
  EXPECT_EQ(RgbToHsv(ColormapColor(0.0)).h, 120);
  EXPECT_EQ(RgbToHsv(ColormapColor(1.0)).h, 0);
}

TEST(ColormapTest, WarmHalfIsKeptCoolEndIsNot) {
  const ColorList list = DefaultColorList();
  for (int i = 300; i <= 1000; ++i) EXPECT_TRUE(list.Keeps(ColormapColor(i / 1000.0))) << i;
  for (int i = 0; i <= 50; ++i) EXPECT_FALSE(list.Keeps(ColormapColor(i / 1000.0))) << i;
}

TEST(DistractorTest, PaletteAvoidsKeepList) {
  const ColorList list = DefaultColorList();
  for (const Rgb& c : DistractorPalette()) EXPECT_FALSE(list.Keeps(c));
  RasterImage image(64, 64, Rgb{0, 0, 255});
  AddDistractors(image, 5, 3);
  EXPECT_EQ(BuildMask(image, list).CountKept(), 0u);
  EXPECT_NE(image, RasterImage(64, 64, Rgb{0, 0, 255}));
}

TEST(ClassBandsTest, DefaultsAndValidation) {
  const ClassBands b;
  EXPECT_NO_THROW(b.Validate());
  EXPECT_EQ(b.For(Vigor::kWeak).hi, 45.0);
  ClassBands overlap;
  overlap.weak = {5.0, 70.0};
  EXPECT_ERROR_CODE(overlap.Validate(), ErrorCode::kInvalidArgument);
}

TEST(DrawSwallowParamsTest, PeaksStayInBand) {
  const SynthOptions options;
  for (Vigor v : {Vigor::kNormal, Vigor::kWeak, Vigor::kFailed}) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const SwallowParams p = DrawSwallowParams(v, i, 42, options);
      EXPECT_GE(p.peak_pressure, options.bands.For(v).lo);
      EXPECT_LE(p.peak_pressure, options.bands.For(v).hi);
      EXPECT_GE(p.wave_width, options.wave_width_lo);
      EXPECT_LE(p.wave_width, options.wave_width_hi);
    }
  }
}

std::string FileBytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(GenerateDatasetTest, CountsAndLayout) {
  testing::ScratchDir dir("synth");
  const fs::path manifest = GenerateDataset(2, dir.path(), 7);
  const auto samples = ReadManifest(manifest);
  ASSERT_EQ(samples.size(), 6u);
  EXPECT_EQ(samples[0].label, Vigor::kNormal);
  EXPECT_EQ(samples[5].label, Vigor::kFailed);
  for (const LabeledSample& s : samples) {
    const RasterImage image = LoadImage(ResolveSamplePath(manifest, s));
    EXPECT_EQ(image.width(), 128);
    EXPECT_EQ(image.height(), 128);
  }
}

TEST(GenerateDatasetTest, SameSeedSameBytes) {
  testing::ScratchDir a("synth_a");
  testing::ScratchDir b("synth_b");
  SynthOptions options;
  options.distractors = 2;
  GenerateDataset(3, a.path(), 11, options);
  GenerateDataset(3, b.path(), 11, options);
  EXPECT_EQ(FileBytes(a / "manifest.csv"), FileBytes(b / "manifest.csv"));
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a / "images")) {
    EXPECT_EQ(FileBytes(entry.path()), FileBytes(b / "images" / entry.path().filename()));
    ++compared;
  }
  EXPECT_EQ(compared, 9);
}

TEST(GenerateDatasetTest, BalancedAtScale) {
  testing::ScratchDir dir("synth_big");
  SynthOptions options;
  options.width = 32;
  options.height = 32;
  const auto samples = ReadManifest(GenerateDataset(200, dir.path(), 1, options));
  ASSERT_EQ(samples.size(), 600u);
  for (Vigor v : {Vigor::kNormal, Vigor::kWeak, Vigor::kFailed}) {
    EXPECT_EQ(std::count_if(samples.begin(), samples.end(),
                            [v](const LabeledSample& s) { return s.label == v; }),
              200);
  }
}

TEST(SynthImageTest, KeptPixelsOrderTheClasses) {
  const SynthOptions options;
  const ColorList list = DefaultColorList();
  double mean[3] = {0, 0, 0};
  const int per_class = 50;
  for (int v = 0; v < 3; ++v) {
    for (int i = 0; i < per_class; ++i) {
      const SwallowParams p = DrawSwallowParams(static_cast<Vigor>(v), i, 314, options);
      mean[v] += static_cast<double>(BuildMask(SynthImage(p, options), list).CountKept());
    }
    mean[v] /= per_class;
  }
  const int normal = 0, weak = 1, failed = 2;
  EXPECT_LT(mean[failed], mean[weak]);
  EXPECT_LT(mean[weak], mean[normal]);
}

}  // namespace
}  // namespace manohog
