#include "manohog/pipeline.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "manohog/error.h"
#include "manohog/image_io.h"

namespace manohog {

void PipelineConfig::Validate() const {
  hog.Validate();
  train.Validate();
  if (!(roi.density_threshold > 0.0 && roi.density_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "roi.threshold must lie in (0, 1]");
  }
  if (!(roi.pad_fraction >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "roi.pad must be non-negative");
  }
  Apportion(1, ratios);
}

void SetPipelineValue(PipelineConfig& config, std::string_view key, std::string_view value) {
  const std::string what(key);
  if (key.starts_with("hog.")) {
    if (!SetHogConfigValue(config.hog, key.substr(4), value)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown key '" + what + "'");
    }
  } else if (key == "roi.threshold") {
    config.roi.density_threshold = ParseDoubleValue(value, what);
  } else if (key == "roi.pad") {
    config.roi.pad_fraction = ParseDoubleValue(value, what);
  } else if (key == "train.c") {
    config.train.c = ParseDoubleValue(value, what);
  } else if (key == "train.tol") {
    config.train.tol = ParseDoubleValue(value, what);
  } else if (key == "train.max_iter") {
    config.train.max_iter = ParseIntValue(value, what);
  } else if (key == "train.seed") {
    config.train.seed = ParseUnsignedValue(value, what);
  } else if (key == "fe.enabled") {
    config.fe_enabled = ParseBoolValue(value, what);
  } else if (key == "color.include_green") {
    config.color_list = DefaultColorList(ParseBoolValue(value, what));
  } else if (key == "color.file") {
    config.color_list = ReadColorList(std::filesystem::path(std::string(value)));
  } else if (key == "crop") {
    config.crop = ParseCropBox(value);
  } else if (key == "split.ratios") {
    const std::vector<double> r = ParseDoubleList(value, what);
    if (r.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument, "split.ratios needs three values");
    }
    config.ratios = {r[0], r[1], r[2]};
  } else if (key == "split.seed") {
    config.split_seed = ParseUnsignedValue(value, what);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown key '" + what + "'");
  }
}

void ApplyKeyValues(PipelineConfig& config, const KeyValues& values) {
  for (const auto& [key, value] : values) SetPipelineValue(config, key, value);
}

CropBox SelectRegion(const RasterImage& image, const PipelineConfig& config) {
  if (config.crop) return *config.crop;
  try {
    return DetectRoi(image, config.color_list, config.roi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoSignal) throw;
    return {0, 0, image.width(), image.height()};
  }
}

Descriptor ExtractDescriptor(const RasterImage& image, const PipelineConfig& config) {
  RasterImage region = Crop(image, SelectRegion(image, config));
  if (config.fe_enabled) {
    region = ApplyMask(region, BuildMask(region, config.color_list));
  }
  return ComputeDescriptor(region, config.hog);
}

FeatureBatch ExtractBatch(const std::vector<LabeledSample>& samples,
                          const std::filesystem::path& manifest_dir,
                          const PipelineConfig& config, int jobs) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyDataset, "manifest lists no samples");
  config.hog.Validate();

  struct Slot {
    std::vector<double> values;
    std::string error;
  };
  std::vector<Slot> slots(samples.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      const LabeledSample& s = samples[i];
      const std::filesystem::path path =
          s.image_path.is_absolute() ? s.image_path : manifest_dir / s.image_path;
      try {
        slots[i].values = ExtractDescriptor(LoadImage(path), config).values;
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };
  const int workers = std::clamp(jobs, 1, static_cast<int>(samples.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  FeatureBatch batch;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!slots[i].error.empty()) {
      batch.failures.push_back({samples[i], slots[i].error});
      continue;
    }
    batch.features.AppendRow(slots[i].values);
    batch.labels.push_back(static_cast<int>(samples[i].label));
    batch.samples.push_back(samples[i]);
  }
  if (batch.samples.empty()) {
    throw Error(ErrorCode::kEmptyDataset,
                "all " + std::to_string(samples.size()) +
                    " samples failed; first: " + batch.failures.front().message);
  }
  return batch;
}

std::vector<int> VigorClassIds() {
  std::vector<int> ids;
  for (int c = 0; c < kVigorClassCount; ++c) ids.push_back(c);
  return ids;
}

std::vector<std::string> VigorClassNames() {
  return {kVigorNames.begin(), kVigorNames.end()};
}

ClassReport EvaluateModel(const LinearSvmModel& model, const FeatureBatch& batch) {
  std::vector<int> predicted;
  predicted.reserve(batch.labels.size());
  for (std::size_t i = 0; i < batch.features.rows(); ++i) {
    predicted.push_back(Predict(model, batch.features.Row(i)));
  }
  return Report(Confusion(batch.labels, predicted, VigorClassIds()));
}

void CheckModelMatches(const LinearSvmModel& model, const PipelineConfig& config) {
  if (model.hog_config_digest() != config.hog.Digest()) {
    throw Error(ErrorCode::kDigestMismatch,
                "model HogConfig " + DigestHex(model.hog_config_digest()) +
                    " differs from configured " + DigestHex(config.hog.Digest()));
  }
  if (model.dimension() != config.hog.DescriptorLength()) {
    throw Error(ErrorCode::kDigestMismatch, "model dimension does not match descriptor length");
  }
}

}  // namespace manohog
