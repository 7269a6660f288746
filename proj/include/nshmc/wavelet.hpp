#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nshmc/image.hpp"

namespace nshmc {

/// Orthonormal multi-level 2-D Haar transform on a width x height grid.
///
/// Coefficients use the usual in-place (Mallat) layout: after each level the
/// approximation band occupies the top-left quarter of the current region.
/// forward() is the analysis operator F, inverse() its transpose F^-1 = F^T.
class WaveletOperator {
 public:
  WaveletOperator(std::size_t width, std::size_t height, std::size_t levels);

  /// Deepest decomposition allowed for the given dimensions.
  static std::size_t max_levels(std::size_t width, std::size_t height);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t levels() const { return levels_; }
  std::size_t size() const { return width_ * height_; }

  std::vector<double> forward(std::span<const double> pixels) const;
  std::vector<double> inverse(std::span<const double> coeffs) const;

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t levels_;
};

std::vector<double> haar_forward(const Image& image, std::size_t levels);
Image haar_inverse(std::span<const double> coeffs, const WaveletOperator& op);

}  // namespace nshmc
