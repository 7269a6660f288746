#include "nshmc/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nshmc/errors.hpp"

namespace nshmc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// One analysis level on the leading `n` entries of `v` with stride `stride`:
// averages to the first half, differences to the second half.
void analyze_line(double* v, std::size_t n, std::size_t stride, std::vector<double>& tmp) {
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const double a = v[(2 * i) * stride];
    const double b = v[(2 * i + 1) * stride];
    tmp[i] = (a + b) * kInvSqrt2;
    tmp[half + i] = (a - b) * kInvSqrt2;
  }
  for (std::size_t i = 0; i < n; ++i) v[i * stride] = tmp[i];
}

void synthesize_line(double* v, std::size_t n, std::size_t stride, std::vector<double>& tmp) {
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const double s = v[i * stride];
    const double d = v[(half + i) * stride];
    tmp[2 * i] = (s + d) * kInvSqrt2;
    tmp[2 * i + 1] = (s - d) * kInvSqrt2;
  }
  for (std::size_t i = 0; i < n; ++i) v[i * stride] = tmp[i];
}

}  // namespace

std::size_t WaveletOperator::max_levels(std::size_t width, std::size_t height) {
  std::size_t levels = 0;
  while (width % 2 == 0 && height % 2 == 0 && width > 1 && height > 1) {
    width /= 2;
    height /= 2;
    ++levels;
  }
  return levels;
}

WaveletOperator::WaveletOperator(std::size_t width, std::size_t height, std::size_t levels)
    : width_(width), height_(height), levels_(levels) {
  if (width_ == 0 || height_ == 0) throw DimensionError("wavelet: empty grid");
  if (levels_ == 0) throw DomainError("wavelet: levels must be positive");
  if (levels_ > max_levels(width_, height_))
    throw DimensionError("wavelet: " + std::to_string(width_) + "x" + std::to_string(height_) +
                         " is not divisible by 2^" + std::to_string(levels_));
}

std::vector<double> WaveletOperator::forward(std::span<const double> pixels) const {
  if (pixels.size() != size()) throw DimensionError("wavelet: input length mismatch");
  std::vector<double> c(pixels.begin(), pixels.end());
  std::vector<double> tmp(std::max(width_, height_));
  std::size_t w = width_;
  std::size_t h = height_;
  for (std::size_t level = 0; level < levels_; ++level) {
    for (std::size_t y = 0; y < h; ++y) analyze_line(&c[y * width_], w, 1, tmp);
    for (std::size_t x = 0; x < w; ++x) analyze_line(&c[x], h, width_, tmp);
    w /= 2;
    h /= 2;
  }
  return c;
}

std::vector<double> WaveletOperator::inverse(std::span<const double> coeffs) const {
  if (coeffs.size() != size()) throw DimensionError("wavelet: coefficient length mismatch");
  std::vector<double> p(coeffs.begin(), coeffs.end());
  std::vector<double> tmp(std::max(width_, height_));
  for (std::size_t level = levels_; level-- > 0;) {
    const std::size_t w = width_ >> level;
    const std::size_t h = height_ >> level;
    for (std::size_t x = 0; x < w; ++x) synthesize_line(&p[x], h, width_, tmp);
    for (std::size_t y = 0; y < h; ++y) synthesize_line(&p[y * width_], w, 1, tmp);
  }
  return p;
}

std::vector<double> haar_forward(const Image& image, std::size_t levels) {
  const WaveletOperator op(image.width, image.height, levels);
  return op.forward(image.pixels);
}

Image haar_inverse(std::span<const double> coeffs, const WaveletOperator& op) {
  return Image(op.width(), op.height(), op.inverse(coeffs));
}

}  // namespace nshmc
