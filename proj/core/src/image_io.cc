#include "manohog/image_io.h"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "manohog/error.h"

namespace manohog {
namespace {

struct ReadCursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t offset;
};

void ReadFromCursor(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->size - cursor->offset < length) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, cursor->data + cursor->offset, length);
  cursor->offset += length;
}

void WriteToVector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void FlushNothing(png_structp) {}

void SilentWarning(png_structp, png_const_charp) {}

// libpng reports errors with longjmp; the message is stashed here before the
// jump so that a C++ exception can be raised once we are back in C++ frames.
void RecordError(png_structp png, png_const_charp message) {
  auto* sink = static_cast<char*>(png_get_error_ptr(png));
  std::strncpy(sink, message, 255);
  sink[255] = '\0';
  png_longjmp(png, 1);
}

// Encodes rows already laid out for (bit_depth, color_type).
std::vector<std::uint8_t> EncodeRows(int width, int height, int bit_depth,
                                     int color_type,
                                     std::vector<png_bytep>& rows) {
  std::vector<std::uint8_t> out;
  char message[256] = {0};
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, message,
                                            RecordError, SilentWarning);
  if (png == nullptr) throw Error(ErrorCode::kIo, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::kIo, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, std::string("PNG encode failed: ") + message);
  }
  png_set_write_fn(png, &out, WriteToVector, FlushNothing);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

RasterImage DecodePng(std::span<const std::uint8_t> bytes,
                      const std::string& origin) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat, origin + " is not a PNG file");
  }

  ReadCursor cursor{bytes.data(), bytes.size(), 0};
  char message[256] = {0};
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, message,
                                           RecordError, SilentWarning);
  if (png == nullptr) throw Error(ErrorCode::kCorruptImage, origin);
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::kCorruptImage, origin);
  }

  // Decode buffers are sized after the header is read. They sit behind a
  // pointer that is fixed before setjmp, so nothing the longjmp path touches
  // lives in a register-cached local.
  struct Buffers {
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
  };
  const auto buffers = std::make_unique<Buffers>();

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kCorruptImage, origin + ": " + message);
  }

  png_set_read_fn(png, &cursor, ReadFromCursor);
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(width) * 3) {
    png_error(png, "unexpected row layout after transforms");
  }
  std::vector<std::uint8_t>& buffer = buffers->pixels;
  buffer.resize(static_cast<std::size_t>(width) * height * 3);
  buffers->rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    buffers->rows[y] = buffer.data() + static_cast<std::size_t>(y) * width * 3;
  }
  png_read_image(png, buffers->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  std::vector<Rgb> pixels(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
  }
  return RasterImage(static_cast<int>(width), static_cast<int>(height),
                     std::move(pixels));
}

RasterImage LoadImage(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  std::vector<std::uint8_t> bytes;
  try {
    bytes = ReadFileBytes(path);
  } catch (const Error&) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  return DecodePng(bytes, path.string());
}

std::vector<std::uint8_t> EncodePng(const RasterImage& image) {
  std::vector<std::uint8_t> buffer;
  buffer.reserve(image.pixels().size() * 3);
  for (const Rgb& p : image.pixels()) {
    buffer.push_back(p.r);
    buffer.push_back(p.g);
    buffer.push_back(p.b);
  }
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = buffer.data() + static_cast<std::size_t>(y) * image.width() * 3;
  }
  return EncodeRows(image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB, rows);
}

void SavePng(const RasterImage& image, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodePng(image));
}

std::vector<std::uint8_t> EncodeBitmapPng(int width, int height,
                                          const std::vector<bool>& bits) {
  if (width <= 0 || height <= 0 ||
      bits.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch, "bitmap size does not match bit count");
  }
  const std::size_t stride = (static_cast<std::size_t>(width) + 7) / 8;
  std::vector<std::uint8_t> buffer(stride * height, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (bits[static_cast<std::size_t>(y) * width + x]) {
        buffer[y * stride + x / 8] |= static_cast<std::uint8_t>(0x80u >> (x % 8));
      }
    }
  }
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = buffer.data() + y * stride;
  return EncodeRows(width, height, 1, PNG_COLOR_TYPE_GRAY, rows);
}

}  // namespace manohog
