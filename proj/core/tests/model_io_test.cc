#include <gtest/gtest.h>

#include <zlib.h>

#include <cstring>

#include "manohog/descriptor_io.h"
#include "manohog/image_io.h"
#include "manohog/model_io.h"
#include "manohog/rng.h"
#include "test_support.h"

namespace manohog {
namespace {

LinearSvmModel RandomModel(std::uint64_t seed, int classes, int dim) {
  SplitMix64 rng(seed);
  LinearSvmModel m;
  for (int k = 0; k < classes; ++k) {
    m.classes.push_back(k * 2);
    std::vector<double> w(dim);
    for (double& v : w) v = rng.Normal();
    m.weights.push_back(w);
    m.biases.push_back(rng.Normal());
  }
  m.hog_config.window_w = 64;
  m.hog_config.gamma = 0.8;
  m.train_config.c = 0.3;
  m.train_config.seed = 99;
  m.flags = LinearSvmModel::kFlagFeatureExtraction;
  return m;
}

TEST(ModelIoTest, RoundTripIsBitExact) {
  const LinearSvmModel m = RandomModel(1, 3, 50);
  const auto bytes = EncodeModel(m);
  const LinearSvmModel back = DecodeModel(bytes);
  EXPECT_EQ(back, m);
  EXPECT_EQ(EncodeModel(back), bytes);
  // Header (4+2+2+2+4), two length-prefixed config blocks, classes, CRC.
  EXPECT_EQ(bytes.size(), 14u + 4 + 44 + 4 + 28 + 3 * (2 + 8 + 50 * 8) + 4);
  EXPECT_EQ(std::memcmp(bytes.data(), "MSVM", 4), 0);
}

TEST(ModelIoTest, SaveLoad) {
  testing::ScratchDir dir("model");
  const LinearSvmModel m = RandomModel(2, 2, 7);
  SaveModel(m, dir / "m.msvm");
  EXPECT_EQ(LoadModel(dir / "m.msvm"), m);
  EXPECT_ERROR_CODE(LoadModel(dir / "missing.msvm"), ErrorCode::kIo);
}

TEST(ModelIoTest, TrailingCrcCoversPayload) {
  const auto bytes = EncodeModel(RandomModel(3, 2, 4));
  const uLong crc = crc32(0L, bytes.data(), static_cast<uInt>(bytes.size() - 4));
  const std::uint32_t stored = bytes[bytes.size() - 4] | (bytes[bytes.size() - 3] << 8) |
                               (bytes[bytes.size() - 2] << 16) |
                               (static_cast<std::uint32_t>(bytes[bytes.size() - 1]) << 24);
  EXPECT_EQ(stored, static_cast<std::uint32_t>(crc));
}

TEST(ModelIoTest, CorruptionIsDetected) {
  const auto bytes = EncodeModel(RandomModel(4, 3, 10));
  auto flipped = bytes;
  flipped[60] ^= 0x10;
  EXPECT_ERROR_CODE(DecodeModel(flipped), ErrorCode::kChecksumMismatch);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_ERROR_CODE(DecodeModel(bad_magic), ErrorCode::kBadMagic);

  auto version = bytes;
  version[4] = 9;
  EXPECT_ERROR_CODE(DecodeModel(version), ErrorCode::kVersionUnsupported);
}

TEST(ModelIoTest, TruncationIsDetected) {
  const auto bytes = EncodeModel(RandomModel(5, 3, 10));
  for (std::size_t len : {0ul, 3ul, 10ul, 100ul, bytes.size() - 1}) {
    try {
      DecodeModel(std::span(bytes).first(len));
      ADD_FAILURE() << "no error at length " << len;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kChecksumMismatch || e.code() == ErrorCode::kBadMagic)
          << e.what();
    }
  }
}

// --- descriptor files ------------------------------------------------------

TEST(DescriptorIoTest, SingleFileRoundTrip) {
  const std::vector<double> values = {0.0, 0.25, 1.0, 0.1};
  const auto bytes = EncodeDescriptorFile(values);
  EXPECT_EQ(bytes.size(), 8u + 4 * 4);
  EXPECT_EQ(std::memcmp(bytes.data(), "HOGF", 4), 0);
  const auto back = DecodeDescriptorFile(bytes);
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(back[i], static_cast<float>(values[i]));
  EXPECT_ERROR_CODE(DecodeDescriptorFile(std::span(bytes).first(10)), ErrorCode::kIo);
}

TEST(DescriptorIoTest, BatchRoundTrip) {
  testing::ScratchDir dir("batch");
  DescriptorBatch batch;
  batch.rows = 3;
  batch.cols = 2;
  batch.config_digest = 0xfeedbeefcafe1234ull;
  batch.values = {1, 2, 3, 4, 5, 6};
  WriteDescriptorBatch(dir / "b.hogb", batch);
  const DescriptorBatch back = ReadDescriptorBatch(dir / "b.hogb");
  EXPECT_EQ(back.rows, 3u);
  EXPECT_EQ(back.cols, 2u);
  EXPECT_EQ(back.config_digest, batch.config_digest);
  EXPECT_EQ(back.values, batch.values);
  EXPECT_EQ(back.Row(1)[0], 3.0f);
  auto bytes = EncodeDescriptorBatch(batch);
  bytes[0] = 'Z';
  EXPECT_ERROR_CODE(DecodeDescriptorBatch(bytes), ErrorCode::kBadMagic);
}

}  // namespace
}  // namespace manohog
