#ifndef MANOHOG_MODEL_IO_H_
#define MANOHOG_MODEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "manohog/svm.h"

namespace manohog {

inline constexpr std::uint16_t kModelFormatVersion = 1;

// Model file, all integers and floats little-endian:
//
//   "MSVM"                      4 bytes
//   format version              u16
//   flags                       u16
//   class count                 u16
//   dimension                   u32
//   HogConfig block             u32 length, then HogConfig::Serialize()
//   TrainConfig block           u32 length, then c f64 | tol f64 |
//                               max_iter u32 | seed u64
//   per class                   class id u16 | bias f64 | dimension x f64
//   CRC-32 (zlib polynomial)    u32 over every preceding byte
//
// Errors on decode: BadMagic (short file or wrong magic),
// VersionUnsupported, ChecksumMismatch (CRC failure or inconsistent lengths).
std::vector<std::uint8_t> EncodeModel(const LinearSvmModel& model);
LinearSvmModel DecodeModel(std::span<const std::uint8_t> bytes);

// Errors: Io plus the decode errors above.
void SaveModel(const LinearSvmModel& model, const std::filesystem::path& path);
LinearSvmModel LoadModel(const std::filesystem::path& path);

}  // namespace manohog

#endif  // MANOHOG_MODEL_IO_H_
