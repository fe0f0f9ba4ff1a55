#ifndef MANOHOG_IMAGE_H_
#define MANOHOG_IMAGE_H_

#include <cstdint>
#include <vector>

namespace manohog {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Decoded 8-bit RGB raster, row-major, no padding.
class RasterImage {
 public:
  RasterImage() = default;
  // Throws InvalidArgument unless width, height > 0.
  RasterImage(int width, int height, Rgb fill = {});
  // Throws InvalidArgument when pixels.size() != width * height.
  RasterImage(int width, int height, std::vector<Rgb> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  const Rgb& at(int x, int y) const { return pixels_[Index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[Index(x, y)]; }

  const std::vector<Rgb>& pixels() const { return pixels_; }
  std::vector<Rgb>& pixels() { return pixels_; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

// Bilinear resampling with pixel-centre alignment; same-size resizing is the
// identity. Channels are rounded half-up back to 8 bits.
RasterImage ResizeBilinear(const RasterImage& image, int width, int height);

// 180 degree rotation (both axes flipped).
RasterImage Rotate180(const RasterImage& image);

}  // namespace manohog

#endif  // MANOHOG_IMAGE_H_
