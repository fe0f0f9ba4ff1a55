#include "manohog/descriptor_io.h"

#include <bit>
#include <cstring>
#include <string>

#include "manohog/error.h"
#include "manohog/image_io.h"

namespace manohog {
namespace {

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutU64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutF32(std::vector<std::uint8_t>& out, float v) {
  PutU32(out, std::bit_cast<std::uint32_t>(v));
}

std::uint32_t GetU32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

std::uint64_t GetU64(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  return v;
}

bool HasMagic(std::span<const std::uint8_t> bytes, const char (&magic)[5]) {
  return bytes.size() >= 4 && std::memcmp(bytes.data(), magic, 4) == 0;
}

}  // namespace

std::vector<std::uint8_t> EncodeDescriptorFile(std::span<const double> values) {
  std::vector<std::uint8_t> out = {'H', 'O', 'G', 'F'};
  out.reserve(8 + 4 * values.size());
  PutU32(out, static_cast<std::uint32_t>(values.size()));
  for (double v : values) PutF32(out, static_cast<float>(v));
  return out;
}

std::vector<float> DecodeDescriptorFile(std::span<const std::uint8_t> bytes) {
  if (!HasMagic(bytes, "HOGF")) throw Error(ErrorCode::kBadMagic, "expected HOGF");
  if (bytes.size() < 8) throw Error(ErrorCode::kIo, "truncated HOGF header");
  const std::uint32_t length = GetU32(bytes, 4);
  if (bytes.size() != 8 + 4 * static_cast<std::size_t>(length)) {
    throw Error(ErrorCode::kIo, "HOGF payload does not match its length field");
  }
  std::vector<float> values(length);
  for (std::uint32_t i = 0; i < length; ++i) {
    values[i] = std::bit_cast<float>(GetU32(bytes, 8 + 4 * i));
  }
  return values;
}

std::vector<std::uint8_t> EncodeDescriptorBatch(const DescriptorBatch& batch) {
  if (batch.values.size() != static_cast<std::size_t>(batch.rows) * batch.cols) {
    throw Error(ErrorCode::kDimensionMismatch, "batch values do not match rows x cols");
  }
  std::vector<std::uint8_t> out = {'H', 'O', 'G', 'B'};
  out.reserve(20 + 4 * batch.values.size());
  PutU32(out, batch.rows);
  PutU32(out, batch.cols);
  PutU64(out, batch.config_digest);
  for (float v : batch.values) PutF32(out, v);
  return out;
}

DescriptorBatch DecodeDescriptorBatch(std::span<const std::uint8_t> bytes) {
  if (!HasMagic(bytes, "HOGB")) throw Error(ErrorCode::kBadMagic, "expected HOGB");
  if (bytes.size() < 20) throw Error(ErrorCode::kIo, "truncated HOGB header");
  DescriptorBatch batch;
  batch.rows = GetU32(bytes, 4);
  batch.cols = GetU32(bytes, 8);
  batch.config_digest = GetU64(bytes, 12);
  const std::size_t count = static_cast<std::size_t>(batch.rows) * batch.cols;
  if (bytes.size() != 20 + 4 * count) {
    throw Error(ErrorCode::kIo, "HOGB payload does not match rows x cols");
  }
  batch.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    batch.values[i] = std::bit_cast<float>(GetU32(bytes, 20 + 4 * i));
  }
  return batch;
}

void WriteDescriptorFile(const std::filesystem::path& path, std::span<const double> values) {
  WriteFileBytes(path, EncodeDescriptorFile(values));
}

void WriteDescriptorBatch(const std::filesystem::path& path, const DescriptorBatch& batch) {
  WriteFileBytes(path, EncodeDescriptorBatch(batch));
}

DescriptorBatch ReadDescriptorBatch(const std::filesystem::path& path) {
  return DecodeDescriptorBatch(ReadFileBytes(path));
}

}  // namespace manohog
