#include "cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>

#include "manohog/descriptor_io.h"
#include "manohog/error.h"
#include "manohog/image_io.h"
#include "manohog/model_io.h"
#include "manohog/pipeline.h"
#include "manohog/synth.h"

namespace manohog::cli {
namespace {

namespace fs = std::filesystem;

// Flags shared by the pipeline subcommands. Unset flags leave the value from
// --config (or the built-in default) in place.
struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool no_fe = false;
  std::string crop;
  int jobs = 1;
  std::optional<double> roi_threshold;
  std::optional<double> roi_pad;
  std::optional<double> c;
  std::string color_list;
  bool no_green = false;
  std::string ratios;
};

void AddCommonFlags(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "key=value config file (hog.cell=8, ...)");
  app->add_option("--seed", f.seed, "split and training seed");
  app->add_flag("--no-fe", f.no_fe, "plain HOG: skip color-list masking");
  app->add_option("--crop", f.crop, "manual crop box x,y,w,h (skips ROI detection)");
  app->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--roi-threshold", f.roi_threshold, "ROI kept-pixel density threshold");
  app->add_option("--roi-pad", f.roi_pad, "ROI padding fraction per side");
  app->add_option("--c", f.c, "SVM penalty C");
  app->add_option("--color-list", f.color_list, "color list file (name,h_lo,s_lo,v_lo,h_hi,s_hi,v_hi)");
  app->add_flag("--no-green", f.no_green, "drop the green range from the default color list");
  app->add_option("--ratios", f.ratios, "train,validation,test split ratios (default 7,2,1)");
}

PipelineConfig BuildConfig(const CommonFlags& f) {
  PipelineConfig config;
  if (!f.config_path.empty()) ApplyKeyValues(config, ReadKeyValues(f.config_path));
  if (f.no_green) config.color_list = DefaultColorList(false);
  if (!f.color_list.empty()) config.color_list = ReadColorList(f.color_list);
  if (f.seed) {
    config.split_seed = *f.seed;
    config.train.seed = *f.seed;
  }
  if (f.no_fe) config.fe_enabled = false;
  if (!f.crop.empty()) config.crop = ParseCropBox(f.crop);
  if (f.roi_threshold) config.roi.density_threshold = *f.roi_threshold;
  if (f.roi_pad) config.roi.pad_fraction = *f.roi_pad;
  if (f.c) config.train.c = *f.c;
  if (!f.ratios.empty()) SetPipelineValue(config, "split.ratios", f.ratios);
  config.Validate();
  return config;
}

void ReportFailures(const FeatureBatch& batch, std::ostream& err) {
  for (const SampleFailure& f : batch.failures) {
    err << "skipped " << f.sample.image_path.generic_string() << ": " << f.message << "\n";
  }
}

const std::vector<LabeledSample>& PickSplit(const DatasetSplit& split,
                                            const std::vector<LabeledSample>& all,
                                            const std::string& name) {
  if (name == "train") return split.train;
  if (name == "validation") return split.validation;
  if (name == "test") return split.test;
  return all;
}

void WriteText(const fs::path& path, const std::string& text) {
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                 text.size()));
}

// --- synth -----------------------------------------------------------------

struct SynthFlags {
  int per_class = 200;
  std::string out;
  std::uint64_t seed = 0;
  std::string size = "128x128";
  double noise = SynthOptions{}.noise_sigma;
  int distractors = 0;
  double p_max = SynthOptions{}.p_max;
};

int RunSynth(const SynthFlags& f, std::ostream& out) {
  SynthOptions options;
  const std::size_t x = f.size.find('x');
  if (x == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--size must be WxH");
  options.width = ParseIntValue(std::string_view(f.size).substr(0, x), "--size width");
  options.height = ParseIntValue(std::string_view(f.size).substr(x + 1), "--size height");
  options.noise_sigma = f.noise;
  options.distractors = f.distractors;
  options.p_max = f.p_max;
  const fs::path manifest = GenerateDataset(f.per_class, f.out, f.seed, options);
  out << manifest.string() << "\n";
  return kExitOk;
}

// --- extract ---------------------------------------------------------------

struct ExtractFlags {
  std::string manifest;
  std::string out;
  std::string per_image_dir;
  std::string mask_dir;
};

int RunExtract(const ExtractFlags& f, const CommonFlags& common, std::ostream& out,
               std::ostream& err) {
  const PipelineConfig config = BuildConfig(common);
  const auto samples = ReadManifest(f.manifest);
  const fs::path base = fs::path(f.manifest).parent_path();
  const FeatureBatch batch = ExtractBatch(samples, base, config, common.jobs);
  ReportFailures(batch, err);

  DescriptorBatch matrix;
  matrix.rows = static_cast<std::uint32_t>(batch.features.rows());
  matrix.cols = static_cast<std::uint32_t>(batch.features.cols());
  matrix.config_digest = config.hog.Digest();
  matrix.values.reserve(static_cast<std::size_t>(matrix.rows) * matrix.cols);
  for (std::size_t r = 0; r < batch.features.rows(); ++r) {
    for (double v : batch.features.Row(r)) matrix.values.push_back(static_cast<float>(v));
  }
  WriteDescriptorBatch(f.out, matrix);
  // Row index: which manifest entries the matrix rows belong to.
  WriteManifest(fs::path(f.out).string() + ".csv", batch.samples);

  if (!f.per_image_dir.empty()) {
    fs::create_directories(f.per_image_dir);
    for (std::size_t r = 0; r < batch.samples.size(); ++r) {
      const fs::path name = batch.samples[r].image_path.stem().string() + ".hogf";
      WriteDescriptorFile(fs::path(f.per_image_dir) / name, batch.features.Row(r));
    }
  }
  if (!f.mask_dir.empty()) {
    fs::create_directories(f.mask_dir);
    for (const LabeledSample& s : batch.samples) {
      const RasterImage image = LoadImage(ResolveSamplePath(f.manifest, s));
      const RasterImage region = Crop(image, SelectRegion(image, config));
      SaveMaskPng(BuildMask(region, config.color_list),
                  fs::path(f.mask_dir) / (s.image_path.stem().string() + "_mask.png"));
    }
  }
  out << "extracted " << matrix.rows << " descriptors of length " << matrix.cols << " ("
      << batch.failures.size() << " failed) -> " << f.out << "\n";
  return kExitOk;
}

// --- train -----------------------------------------------------------------

struct TrainFlags {
  std::string manifest;
  std::string model_out;
  std::string report;
};

int RunTrain(const TrainFlags& f, const CommonFlags& common, std::ostream& out,
             std::ostream& err) {
  const PipelineConfig config = BuildConfig(common);
  const auto samples = ReadManifest(f.manifest);
  const fs::path base = fs::path(f.manifest).parent_path();
  const DatasetSplit split = SplitDataset(samples, config.ratios, config.split_seed);

  const FeatureBatch train = ExtractBatch(split.train, base, config, common.jobs);
  ReportFailures(train, err);
  std::vector<BinaryFit> fits;
  LinearSvmModel model =
      TrainMulticlass(train.features, train.labels, config.train, config.hog, common.jobs, &fits);
  if (config.fe_enabled) model.flags |= LinearSvmModel::kFlagFeatureExtraction;
  SaveModel(model, f.model_out);
  out << "trained " << model.classes.size() << " one-vs-rest classifiers on "
      << train.samples.size() << " samples, dimension " << model.dimension() << "\n";

  if (!split.validation.empty()) {
    const FeatureBatch validation = ExtractBatch(split.validation, base, config, common.jobs);
    ReportFailures(validation, err);
    const ClassReport report = EvaluateModel(model, validation);
    out << "validation (" << validation.samples.size() << " samples)\n"
        << RenderReport(report, VigorClassNames()) << "accuracy " << FormatDouble(report.accuracy)
        << "\n";
    if (!f.report.empty()) WriteText(f.report, FormatReportKeyValues(report, VigorClassNames()));
  }

  if (model.flags & LinearSvmModel::kFlagNotConverged) {
    err << "warning: at least one binary problem stopped at max_iter="
        << config.train.max_iter << " before reaching tol=" << config.train.tol << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateFlags {
  std::string manifest;
  std::string model;
  std::string split = "all";
  std::string report;
  double min_accuracy = -1.0;
};

int RunEvaluate(const EvaluateFlags& f, const CommonFlags& common, std::ostream& out,
                std::ostream& err) {
  const PipelineConfig config = BuildConfig(common);
  const LinearSvmModel model = LoadModel(f.model);
  CheckModelMatches(model, config);
  if (((model.flags & LinearSvmModel::kFlagFeatureExtraction) != 0) != config.fe_enabled) {
    err << "warning: model was trained with feature extraction "
        << ((model.flags & LinearSvmModel::kFlagFeatureExtraction) ? "on" : "off")
        << " but evaluation runs with it "
        << (config.fe_enabled ? "on" : "off") << "\n";
  }

  const auto samples = ReadManifest(f.manifest);
  const DatasetSplit split = SplitDataset(samples, config.ratios, config.split_seed);
  const auto& chosen = PickSplit(split, samples, f.split);
  if (chosen.empty()) throw Error(ErrorCode::kEmptyDataset, "split '" + f.split + "' is empty");
  const FeatureBatch batch =
      ExtractBatch(chosen, fs::path(f.manifest).parent_path(), config, common.jobs);
  ReportFailures(batch, err);

  const ClassReport report = EvaluateModel(model, batch);
  out << RenderReport(report, VigorClassNames()) << "accuracy "
      << FormatDouble(report.accuracy) << "\n";
  if (!f.report.empty()) WriteText(f.report, FormatReportKeyValues(report, VigorClassNames()));
  if (f.min_accuracy >= 0.0 && report.accuracy < f.min_accuracy) {
    err << "accuracy " << report.accuracy << " is below --min-accuracy " << f.min_accuracy
        << "\n";
    return kExitData;
  }
  return kExitOk;
}

// --- predict ---------------------------------------------------------------

struct PredictFlags {
  std::string image;
  std::string model;
};

int RunPredict(const PredictFlags& f, const CommonFlags& common, std::ostream& out) {
  const PipelineConfig config = BuildConfig(common);
  const LinearSvmModel model = LoadModel(f.model);
  CheckModelMatches(model, config);
  const Descriptor d = ExtractDescriptor(LoadImage(f.image), config);
  const std::vector<double> scores = Decision(model, d.values);
  const int label = Predict(model, d.values);
  std::string name = std::to_string(label);
  if (label >= 0 && label < kVigorClassCount) name = std::string(VigorName(static_cast<Vigor>(label)));
  out << name << "\t";
  for (std::size_t k = 0; k < scores.size(); ++k) {
    out << (k ? " " : "") << FormatDouble(scores[k]);
  }
  out << "\n";
  return kExitOk;
}

// --- gridsearch-c ----------------------------------------------------------

struct GridFlags {
  std::string manifest;
  std::string grid = "0.001,0.0025,0.01,0.025,0.1,1";
};

int RunGridSearch(const GridFlags& f, const CommonFlags& common, std::ostream& out,
                  std::ostream& err) {
  const PipelineConfig config = BuildConfig(common);
  const auto samples = ReadManifest(f.manifest);
  const fs::path base = fs::path(f.manifest).parent_path();
  const DatasetSplit split = SplitDataset(samples, config.ratios, config.split_seed);
  if (split.validation.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "validation split is empty; adjust --ratios");
  }
  const FeatureBatch train = ExtractBatch(split.train, base, config, common.jobs);
  const FeatureBatch validation = ExtractBatch(split.validation, base, config, common.jobs);
  ReportFailures(train, err);
  ReportFailures(validation, err);
  const GridSearchResult result =
      GridSearchC(train.features, train.labels, validation.features, validation.labels,
                  ParseDoubleList(f.grid, "--grid"), config.train, config.hog, common.jobs);
  for (std::size_t i = 0; i < result.c_values.size(); ++i) {
    out << "c=" << FormatDouble(result.c_values[i])
        << "\tvalidation_accuracy=" << FormatDouble(result.accuracies[i]) << "\n";
  }
  out << "best_c=" << FormatDouble(result.best_c) << "\n";
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Esophageal contraction vigor classification from HRM pseudocolor images"};
  app.require_subcommand(1);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic HRM dataset");
  synth_cmd->add_option("--per-class", synth.per_class, "images per class")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "generator seed");
  synth_cmd->add_option("--size", synth.size, "image size WxH");
  synth_cmd->add_option("--noise", synth.noise, "pressure noise sigma");
  synth_cmd->add_option("--distractors", synth.distractors,
                        "cool-colored rectangles painted per image");
  synth_cmd->add_option("--p-max", synth.p_max, "pressure mapped to pure red");

  CommonFlags common;
  ExtractFlags extract;
  auto* extract_cmd = app.add_subcommand("extract", "compute descriptors for a manifest");
  extract_cmd->add_option("--manifest", extract.manifest, "manifest.csv")->required();
  extract_cmd->add_option("--out", extract.out, "batch descriptor file (HOGB)")->required();
  extract_cmd->add_option("--per-image-dir", extract.per_image_dir,
                          "also write one HOGF file per image here");
  extract_cmd->add_option("--mask-dir", extract.mask_dir,
                          "also write each color mask as a 1-bit PNG here");
  AddCommonFlags(extract_cmd, common);

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "train the one-vs-rest linear SVM");
  train_cmd->add_option("--manifest", train.manifest, "manifest.csv")->required();
  train_cmd->add_option("--model-out", train.model_out, "model file to write")->required();
  train_cmd->add_option("--report", train.report, "validation report (key=value)");
  AddCommonFlags(train_cmd, common);

  EvaluateFlags evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score a model on a manifest or split");
  evaluate_cmd->add_option("--manifest", evaluate.manifest, "manifest.csv")->required();
  evaluate_cmd->add_option("--model", evaluate.model, "model file")->required();
  evaluate_cmd->add_option("--split", evaluate.split, "all, train, validation or test")
      ->check(CLI::IsMember({"all", "train", "validation", "test"}));
  evaluate_cmd->add_option("--report", evaluate.report, "report file (key=value)");
  evaluate_cmd->add_option("--min-accuracy", evaluate.min_accuracy,
                           "exit 2 when accuracy falls below this");
  AddCommonFlags(evaluate_cmd, common);

  PredictFlags predict;
  auto* predict_cmd = app.add_subcommand("predict", "classify one image");
  predict_cmd->add_option("--image", predict.image, "PNG image")->required();
  predict_cmd->add_option("--model", predict.model, "model file")->required();
  AddCommonFlags(predict_cmd, common);

  GridFlags grid;
  auto* grid_cmd = app.add_subcommand("gridsearch-c", "choose C by validation accuracy");
  grid_cmd->add_option("--manifest", grid.manifest, "manifest.csv")->required();
  grid_cmd->add_option("--grid", grid.grid, "comma-separated C values");
  AddCommonFlags(grid_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return RunSynth(synth, out);
    if (extract_cmd->parsed()) return RunExtract(extract, common, out, err);
    if (train_cmd->parsed()) return RunTrain(train, common, out, err);
    if (evaluate_cmd->parsed()) return RunEvaluate(evaluate, common, out, err);
    if (predict_cmd->parsed()) return RunPredict(predict, common, out);
    if (grid_cmd->parsed()) return RunGridSearch(grid, common, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace manohog::cli
