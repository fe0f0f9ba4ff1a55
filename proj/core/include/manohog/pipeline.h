#ifndef MANOHOG_PIPELINE_H_
#define MANOHOG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "manohog/colormask.h"
#include "manohog/hog.h"
#include "manohog/kv_config.h"
#include "manohog/manifest.h"
#include "manohog/metrics.h"
#include "manohog/roi.h"
#include "manohog/split.h"
#include "manohog/svm.h"

namespace manohog {

struct PipelineConfig {
  HogConfig hog;
  ColorList color_list = DefaultColorList();
  RoiOptions roi;
  TrainConfig train;
  bool fe_enabled = true;
  // Manual crop; bypasses ROI detection when set.
  std::optional<CropBox> crop;
  SplitRatios ratios;
  std::uint64_t split_seed = 0;

  void Validate() const;
};

// Applies one `section.key=value` setting. Keys:
//   hog.{window_w,window_h,cell,block,stride,bins,signed,gamma,clip}
//   roi.threshold  roi.pad
//   train.c  train.tol  train.max_iter  train.seed
//   fe.enabled  color.include_green  color.file  crop (x,y,w,h)
//   split.ratios (a,b,c)  split.seed
// Errors: InvalidArgument for unknown keys or bad values.
void SetPipelineValue(PipelineConfig& config, std::string_view key, std::string_view value);
void ApplyKeyValues(PipelineConfig& config, const KeyValues& values);

// Crop (manual box, or detected ROI falling back to the whole image when the
// color mask has no signal) -> optional color masking -> descriptor.
Descriptor ExtractDescriptor(const RasterImage& image, const PipelineConfig& config);

// The region ExtractDescriptor crops to.
CropBox SelectRegion(const RasterImage& image, const PipelineConfig& config);

struct SampleFailure {
  LabeledSample sample;
  std::string message;
};

struct FeatureBatch {
  FeatureMatrix features;
  std::vector<int> labels;
  std::vector<LabeledSample> samples;  // rows of `features`, manifest order
  std::vector<SampleFailure> failures;
};

// Loads and describes every sample (relative paths anchored at
// `manifest_dir`) on up to `jobs` threads. Rows keep manifest order; samples
// that fail are reported in `failures`. Errors: EmptyDataset when every
// sample fails or the list is empty.
FeatureBatch ExtractBatch(const std::vector<LabeledSample>& samples,
                          const std::filesystem::path& manifest_dir,
                          const PipelineConfig& config, int jobs = 1);

std::vector<int> VigorClassIds();
std::vector<std::string> VigorClassNames();

// Predicts every row and builds the confusion report over the vigor classes.
ClassReport EvaluateModel(const LinearSvmModel& model, const FeatureBatch& batch);

// Throws DigestMismatch when the model was trained under another HogConfig.
void CheckModelMatches(const LinearSvmModel& model, const PipelineConfig& config);

}  // namespace manohog

#endif  // MANOHOG_PIPELINE_H_
