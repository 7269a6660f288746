#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nshmc/image.hpp"

namespace nshmc {

/// Equal-width bins on [lo, hi). The last bin also takes x == hi.
struct HistogramSpec {
  double lo = -5.0;
  double hi = 5.0;
  std::size_t bins = 50;

  void validate() const;
  double width() const { return (hi - lo) / static_cast<double>(bins); }
  double center(std::size_t k) const { return lo + (static_cast<double>(k) + 0.5) * width(); }
  std::optional<std::size_t> bin_of(double x) const;
};

/// Density-normalized histogram over a product of identical 1-D bin grids.
///
/// Heights are count / (n * width^d) where n counts every added point,
/// including those outside the grid. Points can be added one at a time, so
/// MSE curves over a growing sample are cheap.
class Histogram {
 public:
  Histogram(HistogramSpec spec, std::size_t dimension = 1);

  void add(double x);
  void add(std::span<const double> point);

  const HistogramSpec& spec() const { return spec_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t cells() const { return counts_.size(); }
  std::size_t count(std::size_t cell) const { return counts_.at(cell); }
  std::size_t total() const { return total_; }
  std::size_t in_range() const { return in_range_; }
  double height(std::size_t cell) const;

  /// Mean over bins of (height - pdf(bin centre))^2. 1-D only.
  double mse_against(const std::function<double(double)>& pdf) const;

  /// Mean over cells of the squared height difference; both histograms must share spec and dimension.
  double mse_against(const Histogram& reference) const;

 private:
  HistogramSpec spec_;
  std::size_t dimension_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
  std::size_t in_range_ = 0;
  double cell_volume_ = 1.0;
};

/// MSE between the density histogram of `samples` and `pdf` at the bin centres.
/// Throws DegenerateInputError when no sample falls inside [lo, hi].
double histogram_mse(std::span<const double> samples, const std::function<double(double)>& pdf,
                     const HistogramSpec& spec);

/// Sample autocorrelation rho_0..rho_max_lag (biased estimator, rho_0 = 1).
std::vector<double> acf(std::span<const double> chain, std::size_t max_lag);

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and `cdf`.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// 10 log10(||reference||^2 / ||reference - estimate||^2); +infinity when the images are equal.
double snr(const Image& reference, const Image& estimate);

/// Mean structural similarity over all valid 11x11 Gaussian windows (sigma 1.5),
/// dynamic range 255.
double ssim(const Image& reference, const Image& estimate);

}  // namespace nshmc
