#ifndef MANOHOG_DESCRIPTOR_IO_H_
#define MANOHOG_DESCRIPTOR_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace manohog {

// Single descriptor file, little-endian:
//   "HOGF" | u32 length | length x f32
std::vector<std::uint8_t> EncodeDescriptorFile(std::span<const double> values);
std::vector<float> DecodeDescriptorFile(std::span<const std::uint8_t> bytes);

// Batch matrix file, little-endian:
//   "HOGB" | u32 rows | u32 cols | u64 config digest | rows x cols f32 (row-major)
struct DescriptorBatch {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint64_t config_digest = 0;
  std::vector<float> values;

  std::span<const float> Row(std::size_t r) const {
    return std::span<const float>(values).subspan(r * cols, cols);
  }
};

std::vector<std::uint8_t> EncodeDescriptorBatch(const DescriptorBatch& batch);
// Errors: BadMagic; Io when the payload length disagrees with the header.
DescriptorBatch DecodeDescriptorBatch(std::span<const std::uint8_t> bytes);

void WriteDescriptorFile(const std::filesystem::path& path, std::span<const double> values);
void WriteDescriptorBatch(const std::filesystem::path& path, const DescriptorBatch& batch);
DescriptorBatch ReadDescriptorBatch(const std::filesystem::path& path);

}  // namespace manohog

#endif  // MANOHOG_DESCRIPTOR_IO_H_
