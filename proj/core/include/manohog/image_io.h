#ifndef MANOHOG_IMAGE_IO_H_
#define MANOHOG_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "manohog/image.h"

namespace manohog {

// Decodes a PNG file. Alpha is dropped, grayscale is expanded to r=g=b,
// palette and low-bit-depth images are expanded, 16-bit channels are reduced
// to 8 bits. Errors: FileNotFound, UnsupportedFormat, CorruptImage (each
// message carries the path).
RasterImage LoadImage(const std::filesystem::path& path);

// Same as LoadImage for an in-memory buffer; `origin` is only used in messages.
RasterImage DecodePng(std::span<const std::uint8_t> bytes,
                      const std::string& origin = "<memory>");

// 8-bit RGB PNG encoding. The output carries no timestamp or text chunks, so
// equal images always produce equal bytes.
std::vector<std::uint8_t> EncodePng(const RasterImage& image);
void SavePng(const RasterImage& image, const std::filesystem::path& path);

// 1-bit grayscale PNG, white where bits[i] is true.
std::vector<std::uint8_t> EncodeBitmapPng(int width, int height,
                                          const std::vector<bool>& bits);

// Whole-file helpers shared by the binary formats. Errors: Io.
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace manohog

#endif  // MANOHOG_IMAGE_IO_H_
