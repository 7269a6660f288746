#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace nshmc {

/// Grayscale image with real-valued pixels, stored row-major.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), pixels(w * h, fill) {}
  Image(std::size_t w, std::size_t h, std::vector<double> data);

  std::size_t size() const { return pixels.size(); }
  double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

  bool operator==(const Image&) const = default;
};

/// Reads a binary PGM (P5) with maxval 255 or 65535 (16-bit big-endian samples).
/// Malformed input raises PgmParseError carrying the failing byte offset.
Image pgm_read(const std::filesystem::path& path);
Image pgm_parse(std::span<const unsigned char> bytes);

/// Writes a binary PGM; pixels are clamped to [0, maxval] and rounded.
void pgm_write(const Image& image, const std::filesystem::path& path, unsigned maxval = 255);
std::vector<unsigned char> pgm_encode(const Image& image, unsigned maxval = 255);

}  // namespace nshmc
