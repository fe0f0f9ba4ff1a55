// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Thresholds are fixed here, not flags.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hog_oracle.h"
#include "hsv_oracle.h"
#include "manohog/colormask.h"
#include "manohog/descriptor_io.h"
#include "manohog/hog.h"
#include "manohog/image_io.h"
#include "manohog/metrics.h"
#include "manohog/model_io.h"
#include "manohog/pipeline.h"
#include "manohog/rng.h"
#include "manohog/split.h"
#include "manohog/svm.h"
#include "manohog/synth.h"
#include "metrics_oracle.h"
#include "svm_oracle.h"

namespace manohog {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

class Workdir {
 public:
  Workdir() : path_(fs::temp_directory_path() / "manohog_acceptance") {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Workdir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  fs::path path_;
};

struct SplitRun {
  double accuracy = 0.0;
  LinearSvmModel model;
};

// Trains on the train split of `manifest` and scores the
// test split under `config`.
SplitRun TrainAndTest(const fs::path& manifest, const PipelineConfig& config) {
  const auto samples = ReadManifest(manifest);
  const DatasetSplit split = SplitDataset(samples, config.ratios, config.split_seed);
  const fs::path base = manifest.parent_path();
  const FeatureBatch train = ExtractBatch(split.train, base, config);
  const FeatureBatch test = ExtractBatch(split.test, base, config);
  SplitRun run;
  run.model = TrainMulticlass(train.features, train.labels, config.train, config.hog);
  run.accuracy = EvaluateModel(run.model, test).accuracy;
  return run;
}

// --- 1 ---------------------------------------------------------------------

constexpr double kMinPipelineAccuracy = 0.90;
constexpr double kWeakBandTop = 45.0;
constexpr double kNoiseShareOfWeakPeak = 0.20;

Outcome SyntheticPipelineAccuracy(const Workdir& work) {
  const auto start = std::chrono::steady_clock::now();
  SynthOptions options;
  options.noise_sigma = kNoiseShareOfWeakPeak * kWeakBandTop;
  const fs::path manifest = GenerateDataset(200, work / "c1", 2026, options);
  PipelineConfig config;
  config.split_seed = 2026;
  const SplitRun run = TrainAndTest(manifest, config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {run.accuracy >= kMinPipelineAccuracy,
          "600 images, noise_sigma " + Fmt("%.1f", options.noise_sigma) + ", test accuracy " +
              Fmt("%.4f", run.accuracy) + " (need >= 0.90), " + Fmt("%.1f", seconds) + " s"};
}

// --- 2 ---------------------------------------------------------------------

constexpr int kOrderingSeeds = 10;
constexpr int kOrderingMinWins = 8;

Outcome FeatureExtractionOrdering(const Workdir& work) {
  SynthOptions options;
  options.noise_sigma = kNoiseShareOfWeakPeak * kWeakBandTop;
  options.distractors = 6;
  int wins = 0;
  std::ostringstream detail;
  for (int seed = 1; seed <= kOrderingSeeds; ++seed) {
    const fs::path manifest =
        GenerateDataset(200, work / ("c2_" + std::to_string(seed)), seed, options);
    PipelineConfig fe;
    fe.split_seed = seed;
    PipelineConfig plain = fe;
    plain.fe_enabled = false;
    const double a = TrainAndTest(manifest, fe).accuracy;
    const double b = TrainAndTest(manifest, plain).accuracy;
    wins += a >= b;
    detail << (seed > 1 ? " " : "") << Fmt("%.2f", a) << "/" << Fmt("%.2f", b);
    fs::remove_all(manifest.parent_path());
  }
  return {wins >= kOrderingMinWins, "FE >= plain in " + std::to_string(wins) + "/" +
                                        std::to_string(kOrderingSeeds) +
                                        " seeds (need >= 8); FE/plain test accuracy: " +
                                        detail.str()};
}

// --- 3 ---------------------------------------------------------------------

Outcome DescriptorLength() {
  HogConfig classic;
  classic.window_w = 64;
  classic.window_h = 128;
  bool ok = classic.DescriptorLength() == 3780 && testing::EnumeratedLength(classic) == 3780;
  RasterImage probe(70, 130, Rgb{10, 20, 30});
  probe.at(5, 5) = {255, 255, 255};
  ok = ok && ComputeDescriptor(probe, classic).values.size() == 3780;

  SplitMix64 rng(3780);
  int matched = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    HogConfig c;
    c.cell = 2 + static_cast<int>(rng.UniformBelow(10));
    c.block = 1 + static_cast<int>(rng.UniformBelow(4));
    c.stride = 1 + static_cast<int>(rng.UniformBelow(c.block));
    c.bins = 2 + static_cast<int>(rng.UniformBelow(17));
    c.window_w = c.cell * (c.block + c.stride * static_cast<int>(rng.UniformBelow(8)));
    c.window_h = c.cell * (c.block + c.stride * static_cast<int>(rng.UniformBelow(8)));
    if (c.window_w < 3 || c.window_h < 3) c.window_w = c.window_h = c.cell * c.block * 2;
    c.Validate();
    const std::size_t expected = testing::EnumeratedLength(c);
    bool same = c.DescriptorLength() == expected;
    if (t % 20 == 0) same = same && ComputeDescriptor(probe, c).values.size() == expected;
    matched += same;
  }
  ok = ok && matched == trials;
  return {ok, "64x128/8/2/1/9 -> " + std::to_string(classic.DescriptorLength()) +
                  " (need 3780); random configs matching enumeration " + std::to_string(matched) +
                  "/" + std::to_string(trials)};
}

// --- 4 ---------------------------------------------------------------------

constexpr double kOrderRatio = 4.0;
constexpr double kOrderRatioTolerance = 0.5;

Outcome GradientOrder() {
  bool ok = true;
  std::ostringstream detail;
  for (double lambda : {12.0, 16.0, 24.0, 32.0}) {
    const double ratio =
        testing::SinusoidGradientError(lambda) / testing::SinusoidGradientError(2.0 * lambda);
    ok = ok && std::abs(ratio - kOrderRatio) <= kOrderRatioTolerance;
    detail << " " << Fmt("%.3f", ratio);
  }
  return {ok, "error ratios for wavelength 12/16/24/32 vs double (need 4 +- 0.5):" + detail.str()};
}

// --- 5 ---------------------------------------------------------------------

constexpr double kBlockNormTolerance = 1e-6;

Outcome BlockNormalization() {
  SplitMix64 rng(55);
  double worst = 0.0;
  long nonzero = 0;
  long zero = 0;
  bool finite = true;
  for (int t = 0; t < 40; ++t) {
    HogConfig c;
    c.cell = 4 + static_cast<int>(rng.UniformBelow(5));
    c.block = 1 + static_cast<int>(rng.UniformBelow(3));
    c.bins = 4 + static_cast<int>(rng.UniformBelow(10));
    c.window_w = c.window_h = c.cell * (c.block + 4);
    c.signed_orientation = rng.UniformBelow(2) == 1;
    c.clip = rng.Uniform(0.05, 0.5);
    RasterImage image(c.window_w, c.window_h, Rgb{0, 0, 0});
    // Random texture on the lower-right part; the rest stays flat so that
    // exactly-zero blocks occur too.
    for (int y = c.window_h / 3; y < c.window_h; ++y) {
      for (int x = c.window_w / 3; x < c.window_w; ++x) {
        const std::uint64_t v = rng.Next();
        image.at(x, y) = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                          static_cast<std::uint8_t>(v >> 16)};
      }
    }
    const Descriptor d = ComputeDescriptor(image, c);
    const std::size_t len = static_cast<std::size_t>(c.block * c.block * c.bins);
    for (std::size_t off = 0; off < d.values.size(); off += len) {
      double sq = 0.0;
      for (std::size_t i = off; i < off + len; ++i) {
        finite = finite && std::isfinite(d.values[i]);
        sq += d.values[i] * d.values[i];
      }
      if (sq == 0.0) {
        ++zero;
      } else {
        ++nonzero;
        worst = std::max(worst, std::abs(std::sqrt(sq) - 1.0));
      }
    }
  }
  const bool ok = finite && worst <= kBlockNormTolerance && zero > 0 && nonzero > 0;
  return {ok, std::to_string(nonzero) + " nonzero blocks, max |norm-1| " + Fmt("%.2e", worst) +
                  " (need <= 1e-6); " + std::to_string(zero) + " zero blocks, " +
                  (finite ? "no NaN" : "NON-FINITE VALUES")};
}

// --- 6 ---------------------------------------------------------------------

constexpr double kSvmRelativeTolerance = 1e-4;

Outcome SvmOptimality() {
  SplitMix64 rng(6);
  double worst = 0.0;
  bool monotone = true;
  const int problems = 50;
  for (int p = 0; p < problems; ++p) {
    const int n = 4 + static_cast<int>(rng.UniformBelow(47));
    const int d = 1 + static_cast<int>(rng.UniformBelow(2));
    const double c = std::pow(10.0, rng.Uniform(-2.0, 1.0));
    const double shift = rng.Uniform(0.0, 4.0);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      const int label = i % 2 == 0 ? 1 : -1;
      std::vector<double> row(d);
      for (double& v : row) v = rng.Normal() + 0.5 * label * shift;
      x.push_back(row);
      y.push_back(label);
    }
    TrainConfig config;
    config.c = c;
    const BinaryFit fit = TrainBinary(FeatureMatrix::FromRows(x), y, config);
    const double oracle = testing::SvmOracle(x, y, c).Solve(d);
    worst = std::max(worst, std::abs(fit.objective - oracle) / std::abs(oracle));
    for (std::size_t i = 1; i < fit.objective_trace.size(); ++i) {
      monotone = monotone && fit.objective_trace[i] <= fit.objective_trace[i - 1];
    }
  }
  return {worst <= kSvmRelativeTolerance && monotone,
          std::to_string(problems) + " problems (n <= 50, d <= 2, default tol), max relative " +
              "deviation from brute force " + Fmt("%.2e", worst) + " (need <= 1e-4), trace " +
              (monotone ? "non-increasing" : "INCREASES")};
}

// --- 7 ---------------------------------------------------------------------

constexpr double kMarginSlack = 1e-3;

Outcome SeparableMargin() {
  SplitMix64 rng(7);
  const double sigma = 1.0;
  const double centers[3][2] = {{0.0, 0.0}, {12.0, 0.0}, {6.0, 11.0}};
  double min_center_gap = 1e9;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      min_center_gap = std::min(min_center_gap, std::hypot(centers[a][0] - centers[b][0],
                                                           centers[a][1] - centers[b][1]));
    }
  }
  FeatureMatrix x;
  std::vector<int> y;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 50; ++i) {
      const std::vector<double> row = {centers[k][0] + sigma * rng.Normal(),
                                       centers[k][1] + sigma * rng.Normal()};
      x.AppendRow(row);
      y.push_back(k);
    }
  }
  TrainConfig config;
  config.c = 1e4;
  std::vector<BinaryFit> fits;
  const LinearSvmModel model = TrainMulticlass(x, y, config, HogConfig{}, 1, &fits);
  int correct = 0;
  double min_margin = 1e9;
  for (std::size_t i = 0; i < y.size(); ++i) {
    correct += Predict(model, x.Row(i)) == y[i];
    for (std::size_t k = 0; k < fits.size(); ++k) {
      const int label = y[i] == model.classes[k] ? 1 : -1;
      double score = fits[k].bias;
      for (std::size_t j = 0; j < 2; ++j) score += fits[k].weights[j] * x.Row(i)[j];
      min_margin = std::min(min_margin, label * score);
    }
  }
  const bool ok = min_center_gap >= 10.0 * sigma && correct == static_cast<int>(y.size()) &&
                  min_margin >= 1.0 - kMarginSlack;
  return {ok, "C = 1e4, center gap " + Fmt("%.1f", min_center_gap / sigma) +
                  " sigma, training accuracy " + std::to_string(correct) + "/" +
                  std::to_string(y.size()) + ", min functional margin " +
                  Fmt("%.6f", min_margin) + " (need >= 0.999)"};
}

// --- 8 ---------------------------------------------------------------------

constexpr double kMicroTolerance = 1e-12;
constexpr double kExampleTolerance = 5e-5;

Outcome MetricsOracle() {
  SplitMix64 rng(8);
  int mismatches = 0;
  double micro_dev = 0.0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const int k = 2 + static_cast<int>(rng.UniformBelow(4));
    const int n = 1 + static_cast<int>(rng.UniformBelow(300));
    std::vector<int> truth(n), pred(n), classes(k);
    for (int c = 0; c < k; ++c) classes[c] = c;
    for (int i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.UniformBelow(k));
      pred[i] = rng.UniformUnit() < 0.5 ? truth[i] : static_cast<int>(rng.UniformBelow(k));
    }
    const ClassReport r = Report(Confusion(truth, pred, classes));
    const auto o = testing::Recount(truth, pred, k);
    bool same = r.accuracy == testing::RecountAccuracy(truth, pred);
    for (int c = 0; c < k; ++c) {
      same = same && r.per_class[c].precision == o[c].precision &&
             r.per_class[c].recall == o[c].recall && r.per_class[c].f1 == o[c].f1 &&
             r.per_class[c].support == o[c].support;
    }
    mismatches += !same;
    micro_dev = std::max(micro_dev, std::abs(r.micro.precision - r.accuracy));
  }
  const ClassReport b = Report(ConfusionMatrix{{0, 1}, {{50, 10}, {5, 35}}});
  const bool example = std::abs(b.per_class[0].precision - 0.9091) <= kExampleTolerance &&
                       std::abs(b.per_class[0].recall - 0.8333) <= kExampleTolerance &&
                       std::abs(b.per_class[0].f1 - 0.8696) <= kExampleTolerance &&
                       std::abs(b.accuracy - 0.85) <= kExampleTolerance;
  return {mismatches == 0 && micro_dev <= kMicroTolerance && example,
          std::to_string(mismatches) + "/" + std::to_string(trials) +
              " recount mismatches, max |micro precision - accuracy| " + Fmt("%.1e", micro_dev) +
              ", [[50,10],[5,35]] -> " + Fmt("%.4f", b.per_class[0].precision) + " " +
              Fmt("%.4f", b.per_class[0].recall) + " " + Fmt("%.4f", b.per_class[0].f1) + " " +
              Fmt("%.2f", b.accuracy)};
}

// --- 9 ---------------------------------------------------------------------

Outcome ReportRendering() {
  const ClassReport r = Report(ConfusionMatrix{{0, 1, 2}, testing::ReferenceVigorCounts()});
  const std::string text = RenderReport(r, {"normal", "weak", "failed"});
  const std::vector<std::string> expected = {
      "precision recall f1-score support", "normal 0.86 0.95 0.90 148",
      "weak 0.92 0.91 0.92 155", "failed 0.80 0.69 0.74 107", "total 0.87 0.87 0.87 410"};
  std::istringstream in(text);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) {
    std::istringstream words(line);
    std::string joined;
    for (std::string w; words >> w;) joined += (joined.empty() ? "" : " ") + w;
    rows.push_back(joined);
  }
  const bool ok = rows == expected;
  return {ok, ok ? "rendered rows match: " + expected[1] + " | " + expected[2] + " | " +
                       expected[3] + " | " + expected[4]
                 : "rendered:\n" + text};
}

// --- 10 --------------------------------------------------------------------

std::string Bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool SameTree(const fs::path& a, const fs::path& b) {
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path other = b / fs::relative(e.path(), a);
    if (!fs::exists(other) || Bytes(e.path()) != Bytes(other)) return false;
    ++files;
  }
  return files > 0;
}

Outcome RoundTripsAndDeterminism(const Workdir& work) {
  SynthOptions options;
  options.distractors = 2;
  const fs::path ma = GenerateDataset(10, work / "c10a", 10, options);
  const fs::path mb = GenerateDataset(10, work / "c10b", 10, options);
  const bool datasets = SameTree(ma.parent_path(), mb.parent_path());

  PipelineConfig config;
  auto encode_batch = [&](const fs::path& manifest) {
    const FeatureBatch batch =
        ExtractBatch(ReadManifest(manifest), manifest.parent_path(), config);
    DescriptorBatch out;
    out.rows = static_cast<std::uint32_t>(batch.features.rows());
    out.cols = static_cast<std::uint32_t>(batch.features.cols());
    out.config_digest = config.hog.Digest();
    for (std::size_t r = 0; r < batch.features.rows(); ++r) {
      for (double v : batch.features.Row(r)) out.values.push_back(static_cast<float>(v));
    }
    return std::pair{EncodeDescriptorBatch(out), batch};
  };
  const auto [bytes_a, batch_a] = encode_batch(ma);
  const auto [bytes_b, batch_b] = encode_batch(mb);
  const bool descriptors = bytes_a == bytes_b;

  const LinearSvmModel model_a =
      TrainMulticlass(batch_a.features, batch_a.labels, config.train, config.hog);
  const LinearSvmModel model_b =
      TrainMulticlass(batch_b.features, batch_b.labels, config.train, config.hog);
  SaveModel(model_a, work / "a.msvm");
  SaveModel(model_b, work / "b.msvm");
  const bool models = Bytes(work / "a.msvm") == Bytes(work / "b.msvm");
  const LinearSvmModel loaded = LoadModel(work / "a.msvm");
  const bool round_trip = loaded == model_a && EncodeModel(loaded) == EncodeModel(model_a);

  auto yes = [](bool b) { return b ? "identical" : "DIFFERENT"; };
  return {datasets && descriptors && models && round_trip,
          std::string("datasets ") + yes(datasets) + ", descriptor batches " + yes(descriptors) +
              ", model files " + yes(models) + ", save/load " +
              (round_trip ? "bit-exact" : "NOT EXACT")};
}

// --- 11 --------------------------------------------------------------------

Outcome ColorListSweep() {
  const ColorList list = DefaultColorList();
  const int side = 4096;  // 4096^2 == 2^24, one pixel per RGB value
  std::vector<Rgb> pixels(static_cast<std::size_t>(side) * side);
  for (std::uint32_t v = 0; v < pixels.size(); ++v) {
    pixels[v] = {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
                 static_cast<std::uint8_t>(v)};
  }
  const RasterImage image(side, side, std::move(pixels));
  const PixelMask mask = BuildMask(image, list);
  std::size_t disagreements = 0;
  std::size_t kept = 0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const Hsv hsv = testing::OracleHsv(image.at(x, y));
      bool member = false;
      for (const ColorRange& r : list.ranges()) {
        member = member || (hsv.h >= r.lower.h && hsv.h <= r.upper.h && hsv.s >= r.lower.s &&
                            hsv.s <= r.upper.s && hsv.v >= r.lower.v && hsv.v <= r.upper.v);
      }
      disagreements += member != mask.at(x, y);
      kept += member;
    }
  }
  const Rgb mid = ColormapColor(0.5);
  const Hsv mid_hsv = RgbToHsv(mid);
  const bool yellow = mid_hsv.h >= 26 && mid_hsv.h <= 34 && mid_hsv.s >= 43 && mid_hsv.v >= 46;
  return {disagreements == 0 && yellow,
          "all 2^24 RGB values: " + std::to_string(disagreements) + " disagreements, " +
              std::to_string(kept) + " kept; t=0.5 -> (" + std::to_string(mid.r) + "," +
              std::to_string(mid.g) + "," + std::to_string(mid.b) + ") hsv (" +
              std::to_string(mid_hsv.h) + "," + std::to_string(mid_hsv.s) + "," +
              std::to_string(mid_hsv.v) + ") " + (yellow ? "in" : "NOT in") +
              " yellow [26,43,46]-[34,255,255]"};
}

}  // namespace
}  // namespace manohog

int main() {
  using manohog::Outcome;
  manohog::Workdir work;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"synthetic pipeline accuracy", [&] { return manohog::SyntheticPipelineAccuracy(work); }},
      {"feature extraction vs plain HOG", [&] { return manohog::FeatureExtractionOrdering(work); }},
      {"descriptor length", manohog::DescriptorLength},
      {"gradient convergence order", manohog::GradientOrder},
      {"block normalization", manohog::BlockNormalization},
      {"SVM optimality", manohog::SvmOptimality},
      {"separable margin", manohog::SeparableMargin},
      {"metrics oracle", manohog::MetricsOracle},
      {"report rendering", manohog::ReportRendering},
      {"round-trips and determinism", [&] { return manohog::RoundTripsAndDeterminism(work); }},
      {"color-list correctness", manohog::ColorListSweep},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s  criterion %zu: %s -- %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
