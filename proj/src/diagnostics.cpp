#include "nshmc/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "nshmc/errors.hpp"

namespace nshmc {

void HistogramSpec::validate() const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("histogram: need finite lo < hi");
  if (bins < 2) throw DomainError("histogram: need at least 2 bins");
}

std::optional<std::size_t> HistogramSpec::bin_of(double x) const {
  if (!(x >= lo && x <= hi)) return std::nullopt;
  const auto k = static_cast<std::size_t>((x - lo) / width());
  return std::min(k, bins - 1);
}

Histogram::Histogram(HistogramSpec spec, std::size_t dimension)
    : spec_(spec), dimension_(dimension) {
  spec_.validate();
  if (dimension_ == 0) throw DomainError("histogram: dimension must be positive");
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dimension_; ++d) {
    if (cells > (std::size_t{1} << 40) / spec_.bins) throw DomainError("histogram: too many cells");
    cells *= spec_.bins;
  }
  counts_.assign(cells, 0);
  cell_volume_ = std::pow(spec_.width(), static_cast<double>(dimension_));
}

void Histogram::add(double x) { add(std::span<const double>(&x, 1)); }

void Histogram::add(std::span<const double> point) {
  if (point.size() != dimension_) throw DimensionError("histogram: point dimension mismatch");
  ++total_;
  std::size_t cell = 0;
  for (double v : point) {
    const auto k = spec_.bin_of(v);
    if (!k) return;
    cell = cell * spec_.bins + *k;
  }
  ++counts_[cell];
  ++in_range_;
}

double Histogram::height(std::size_t cell) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(counts_[cell]) / (static_cast<double>(total_) * cell_volume_);
}

double Histogram::mse_against(const std::function<double(double)>& pdf) const {
  if (dimension_ != 1) throw DimensionError("histogram: pdf comparison is 1-D only");
  if (in_range_ == 0) throw DegenerateInputError("histogram: no samples inside [lo, hi]");
  double sum = 0.0;
  for (std::size_t k = 0; k < spec_.bins; ++k) {
    const double d = height(k) - pdf(spec_.center(k));
    sum += d * d;
  }
  return sum / static_cast<double>(spec_.bins);
}

double Histogram::mse_against(const Histogram& reference) const {
  if (reference.dimension_ != dimension_ || reference.spec_.bins != spec_.bins ||
      reference.spec_.lo != spec_.lo || reference.spec_.hi != spec_.hi)
    throw DimensionError("histogram: incompatible grids");
  if (in_range_ == 0 || reference.in_range_ == 0)
    throw DegenerateInputError("histogram: no samples inside the grid");
  double sum = 0.0;
  for (std::size_t c = 0; c < counts_.size(); ++c) {
    const double d = height(c) - reference.height(c);
    sum += d * d;
  }
  return sum / static_cast<double>(counts_.size());
}

double histogram_mse(std::span<const double> samples, const std::function<double(double)>& pdf,
                     const HistogramSpec& spec) {
  Histogram h(spec);
  for (double x : samples) h.add(x);
  return h.mse_against(pdf);
}

std::vector<double> acf(std::span<const double> chain, std::size_t max_lag) {
  if (max_lag == 0) throw DomainError("acf: max_lag must be positive");
  if (chain.size() <= max_lag) throw DomainError("acf: chain must be longer than max_lag");
  const double n = static_cast<double>(chain.size());
  const double mean = std::accumulate(chain.begin(), chain.end(), 0.0) / n;
  std::vector<double> centred(chain.size());
  std::transform(chain.begin(), chain.end(), centred.begin(), [mean](double v) { return v - mean; });
  const double denom = std::inner_product(centred.begin(), centred.end(), centred.begin(), 0.0);
  if (!(denom > 0.0)) throw DegenerateInputError("acf: chain has zero variance");
  std::vector<double> rho(max_lag + 1);
  rho[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t + k < centred.size(); ++t) s += centred[t] * centred[t + k];
    rho[k] = s / denom;
  }
  return rho;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DegenerateInputError("ks_statistic: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

namespace {

void check_same_shape(const Image& a, const Image& b, const char* what) {
  if (a.width != b.width || a.height != b.height || a.size() != b.size())
    throw DimensionError(std::string(what) + ": image dimensions differ");
}

constexpr int kSsimRadius = 5;
constexpr int kSsimSize = 2 * kSsimRadius + 1;

std::array<double, kSsimSize * kSsimSize> ssim_window() {
  std::array<double, kSsimSize * kSsimSize> w{};
  constexpr double sigma = 1.5;
  double sum = 0.0;
  for (int y = -kSsimRadius; y <= kSsimRadius; ++y)
    for (int x = -kSsimRadius; x <= kSsimRadius; ++x) {
      const double v = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
      w[(y + kSsimRadius) * kSsimSize + (x + kSsimRadius)] = v;
      sum += v;
    }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

double snr(const Image& reference, const Image& estimate) {
  check_same_shape(reference, estimate, "snr");
  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    signal += reference.pixels[i] * reference.pixels[i];
    const double d = reference.pixels[i] - estimate.pixels[i];
    error += d * d;
  }
  if (signal == 0.0) throw DegenerateInputError("snr: reference image is identically zero");
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

double ssim(const Image& reference, const Image& estimate) {
  check_same_shape(reference, estimate, "ssim");
  if (reference.width < kSsimSize || reference.height < kSsimSize)
    throw DimensionError("ssim: images must be at least 11x11");
  constexpr double dynamic_range = 255.0;
  constexpr double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
  constexpr double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
  static const auto window = ssim_window();

  const std::size_t out_w = reference.width - kSsimSize + 1;
  const std::size_t out_h = reference.height - kSsimSize + 1;
  double total = 0.0;
  for (std::size_t oy = 0; oy < out_h; ++oy) {
    for (std::size_t ox = 0; ox < out_w; ++ox) {
      double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
      for (int wy = 0; wy < kSsimSize; ++wy) {
        for (int wx = 0; wx < kSsimSize; ++wx) {
          const double w = window[wy * kSsimSize + wx];
          const double a = reference.at(ox + wx, oy + wy);
          const double b = estimate.at(ox + wx, oy + wy);
          mu_a += w * a;
          mu_b += w * b;
          aa += w * a * a;
          bb += w * b * b;
          ab += w * a * b;
        }
      }
      const double var_a = aa - mu_a * mu_a;
      const double var_b = bb - mu_b * mu_b;
      const double cov = ab - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
               ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
    }
  }
  return total / static_cast<double>(out_w * out_h);
}

}  // namespace nshmc
