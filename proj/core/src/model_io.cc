#include "manohog/model_io.h"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <limits>
#include <string>

#include "manohog/error.h"
#include "manohog/image_io.h"

namespace manohog {
namespace {

constexpr std::size_t kTrainConfigBlockSize = 8 + 8 + 4 + 8;

class Writer {
 public:
  void Bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void U16(std::uint16_t v) { Little(v, 2); }
  void U32(std::uint32_t v) { Little(v, 4); }
  void U64(std::uint64_t v) { Little(v, 8); }
  void F64(double v) { Little(std::bit_cast<std::uint64_t>(v), 8); }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  void Little(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

// Bounds-checked reader; running off the end means the lengths recorded in
// the file are inconsistent.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> Bytes(std::size_t n) {
    Need(n);
    auto s = in_.subspan(at_, n);
    at_ += n;
    return s;
  }
  std::uint16_t U16() { return static_cast<std::uint16_t>(Little(2)); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Little(4)); }
  std::uint64_t U64() { return Little(8); }
  double F64() { return std::bit_cast<double>(Little(8)); }
  bool AtEnd() const { return at_ == in_.size(); }

 private:
  void Need(std::size_t n) const {
    if (in_.size() - at_ < n) {
      throw Error(ErrorCode::kChecksumMismatch, "model payload shorter than its headers claim");
    }
  }
  std::uint64_t Little(int n) {
    Need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in_[at_ + i]) << (8 * i);
    at_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> in_;
  std::size_t at_ = 0;
};

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks to stay within range.
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    const std::size_t chunk =
        std::min<std::size_t>(bytes.size() - offset, std::numeric_limits<uInt>::max());
    crc = crc32(crc, bytes.data() + offset, static_cast<uInt>(chunk));
    offset += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> EncodeModel(const LinearSvmModel& model) {
  const std::size_t classes = model.classes.size();
  if (classes == 0 || model.weights.size() != classes || model.biases.size() != classes) {
    throw Error(ErrorCode::kInvalidArgument, "model class, weight and bias counts differ");
  }
  if (classes > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "too many classes for the model format");
  }
  const std::size_t dim = model.dimension();
  for (const auto& w : model.weights) {
    if (w.size() != dim || dim == 0) {
      throw Error(ErrorCode::kInvalidArgument, "model weight vectors differ in dimension");
    }
  }

  Writer w;
  const std::uint8_t magic[4] = {'M', 'S', 'V', 'M'};
  w.Bytes(magic);
  w.U16(kModelFormatVersion);
  w.U16(model.flags);
  w.U16(static_cast<std::uint16_t>(classes));
  w.U32(static_cast<std::uint32_t>(dim));
  const std::vector<std::uint8_t> hog = model.hog_config.Serialize();
  w.U32(static_cast<std::uint32_t>(hog.size()));
  w.Bytes(hog);
  w.U32(kTrainConfigBlockSize);
  w.F64(model.train_config.c);
  w.F64(model.train_config.tol);
  w.U32(static_cast<std::uint32_t>(model.train_config.max_iter));
  w.U64(model.train_config.seed);
  for (std::size_t k = 0; k < classes; ++k) {
    if (model.classes[k] < 0 || model.classes[k] > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument, "class id does not fit in u16");
    }
    w.U16(static_cast<std::uint16_t>(model.classes[k]));
    w.F64(model.biases[k]);
    for (double v : model.weights[k]) w.F64(v);
  }
  w.U32(Crc32(w.buffer()));
  return std::move(w.buffer());
}

LinearSvmModel DecodeModel(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "MSVM", 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not a model file (expected MSVM)");
  }
  if (bytes.size() < 6) throw Error(ErrorCode::kChecksumMismatch, "model file truncated");
  const std::uint16_t version =
      static_cast<std::uint16_t>(bytes[4] | (static_cast<unsigned>(bytes[5]) << 8));
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kVersionUnsupported,
                "model format version " + std::to_string(version));
  }
  if (bytes.size() < 10) throw Error(ErrorCode::kChecksumMismatch, "model file truncated");
  const auto body = bytes.first(bytes.size() - 4);
  Reader tail(bytes.last(4));
  if (Crc32(body) != tail.U32()) {
    throw Error(ErrorCode::kChecksumMismatch, "CRC-32 does not match model contents");
  }

  Reader r(body);
  r.Bytes(4);
  r.U16();
  LinearSvmModel model;
  model.flags = r.U16();
  const std::uint16_t classes = r.U16();
  const std::uint32_t dim = r.U32();
  const std::uint32_t hog_size = r.U32();
  try {
    model.hog_config = HogConfig::Deserialize(r.Bytes(hog_size));
  } catch (const Error& e) {
    throw Error(ErrorCode::kChecksumMismatch, e.detail());
  }
  if (r.U32() != kTrainConfigBlockSize) {
    throw Error(ErrorCode::kChecksumMismatch, "unexpected TrainConfig block size");
  }
  model.train_config.c = r.F64();
  model.train_config.tol = r.F64();
  model.train_config.max_iter = static_cast<int>(r.U32());
  model.train_config.seed = r.U64();
  for (std::uint16_t k = 0; k < classes; ++k) {
    model.classes.push_back(r.U16());
    model.biases.push_back(r.F64());
    std::vector<double> weights(dim);
    for (double& v : weights) v = r.F64();
    model.weights.push_back(std::move(weights));
  }
  if (!r.AtEnd()) throw Error(ErrorCode::kChecksumMismatch, "trailing bytes in model file");
  return model;
}

void SaveModel(const LinearSvmModel& model, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodeModel(model));
}

LinearSvmModel LoadModel(const std::filesystem::path& path) {
  return DecodeModel(ReadFileBytes(path));
}

}  // namespace manohog
