#ifndef MANOHOG_SPLIT_H_
#define MANOHOG_SPLIT_H_

#include <array>
#include <cstdint>
#include <vector>

#include "manohog/manifest.h"

namespace manohog {

struct SplitRatios {
  double train = 7.0;
  double validation = 2.0;
  double test = 1.0;
};

struct DatasetSplit {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> validation;
  std::vector<LabeledSample> test;
  std::uint64_t seed = 0;
};

// Largest-remainder apportionment of `count` items over the three ratios.
// Quotas are floor(count * r / sum); leftover items go to the largest
// fractional parts, ties to the earlier partition. Sums exactly to count.
std::array<std::size_t, 3> Apportion(std::size_t count, const SplitRatios& ratios);

// Stratified, seeded split. Classes are processed in ascending class id; each
// class's samples (in input order) are shuffled with a SplitMix64 stream
// seeded by DeriveSeed(seed, class_id), then cut train|validation|test by
// Apportion. Within each partition, samples are grouped by ascending class id.
//
// Errors: EmptyDataset; InvalidArgument for negative or all-zero ratios.
DatasetSplit SplitDataset(const std::vector<LabeledSample>& samples,
                          const SplitRatios& ratios, std::uint64_t seed);

}  // namespace manohog

#endif  // MANOHOG_SPLIT_H_
