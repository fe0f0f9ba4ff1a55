#include "manohog/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "manohog/error.h"
#include "manohog/rng.h"

namespace manohog {

std::array<std::size_t, 3> Apportion(std::size_t count, const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.validation, ratios.test};
  for (double v : r) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must be finite and non-negative");
    }
  }
  const double total = r[0] + r[1] + r[2];
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to a positive value");
  }

  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double quota = static_cast<double>(count) * r[k] / total;
    sizes[k] = static_cast<std::size_t>(std::floor(quota));
    remainder[k] = quota - static_cast<double>(sizes[k]);
    assigned += sizes[k];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t i = 0; assigned < count; ++i, ++assigned) {
    ++sizes[order[i % 3]];
  }
  return sizes;
}

DatasetSplit SplitDataset(const std::vector<LabeledSample>& samples,
                          const SplitRatios& ratios, std::uint64_t seed) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyDataset, "no samples to split");

  DatasetSplit split;
  split.seed = seed;
  for (int class_id = 0; class_id < kVigorClassCount; ++class_id) {
    std::vector<LabeledSample> members;
    for (const LabeledSample& s : samples) {
      if (static_cast<int>(s.label) == class_id) members.push_back(s);
    }
    if (members.empty()) continue;

    SplitMix64 rng(DeriveSeed(seed, static_cast<std::uint64_t>(class_id)));
    Shuffle(std::span<LabeledSample>(members), rng);

    const auto sizes = Apportion(members.size(), ratios);
    auto it = members.begin();
    split.train.insert(split.train.end(), it, it + sizes[0]);
    it += sizes[0];
    split.validation.insert(split.validation.end(), it, it + sizes[1]);
    it += sizes[1];
    split.test.insert(split.test.end(), it, it + sizes[2]);
  }
  return split;
}

}  // namespace manohog
