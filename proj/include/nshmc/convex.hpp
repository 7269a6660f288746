#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "nshmc/random.hpp"

namespace nshmc {

// Descriptors of the built-in scalar convex functions.

/// |x|
struct Abs {};

/// |x|^p / gamma, gamma > 0, p >= 1
struct PowerP {
  double gamma;
  double p;
};

/// a|x| + b x^2, a > 0, b > 0
struct QuadL1 {
  double a;
  double b;
};

/// t|x|, t > 0
struct ScaledAbs {
  double t;
};

/// Any proper lsc convex function, evaluated by a user callback. Values may be
/// +infinity outside the domain but never NaN. The optional extended-precision
/// evaluator lets the numeric prox resolve minimizers below double rounding.
struct Custom {
  std::function<double(double)> evaluator;
  std::function<long double(long double)> extended = nullptr;
};

using ConvexDescriptor = std::variant<Abs, PowerP, QuadL1, ScaledAbs, Custom>;

/// A proper lower semi-continuous convex function from R to (-inf, +inf].
///
/// Built-in descriptors carry closed-form proximity operators and
/// subgradient samplers; Custom functions only support evaluation and the
/// numeric prox.
class ScalarConvexFn {
 public:
  explicit ScalarConvexFn(ConvexDescriptor descriptor);

  static ScalarConvexFn abs() { return ScalarConvexFn(Abs{}); }
  static ScalarConvexFn power(double gamma, double p) { return ScalarConvexFn(PowerP{gamma, p}); }
  static ScalarConvexFn quad_l1(double a, double b) { return ScalarConvexFn(QuadL1{a, b}); }
  static ScalarConvexFn scaled_abs(double t) { return ScalarConvexFn(ScaledAbs{t}); }
  static ScalarConvexFn custom(std::function<double(double)> f) {
    return ScalarConvexFn(Custom{std::move(f)});
  }
  static ScalarConvexFn custom_extended(std::function<long double(long double)> f);

  double operator()(double x) const;

  /// Same function evaluated in extended precision (used by the numeric prox).
  long double evaluate_extended(long double x) const;

  const ConvexDescriptor& descriptor() const { return descriptor_; }
  bool is_custom() const { return std::holds_alternative<Custom>(descriptor_); }

  /// prox_f(x) = argmin_u f(u) + (u - x)^2 / 2.
  double prox(double x) const;

  /// True when f is differentiable on all of R.
  bool differentiable() const;
  double derivative(double x) const;

  bool has_subgradient_sampler() const { return !is_custom(); }

  /// A subgradient drawn uniformly from the subdifferential at x.
  double sample_subgradient(double x, Rng& rng) const;

 private:
  ConvexDescriptor descriptor_;
};

/// sign(x) for x != 0, a uniform draw from [-1, 1] at x == 0.
double subgrad_abs_sample(double x, Rng& rng);

/// Prox of t|.|: sign(x) max(|x| - t, 0).
double prox_soft_threshold(double x, double t);

/// Prox of |.|^p / gamma. Closed form for p = 1 and p = 2; otherwise a
/// safeguarded Newton solve of u + (p / gamma) u^(p-1) = |x| on [0, |x|].
double prox_power(double x, double gamma, double p);

/// Prox of a|.| + b(.)^2: sign(x) max(|x| - a, 0) / (1 + 2b).
double prox_quad_l1(double x, double a, double b);

/// Componentwise prox of U(x) = ||x||_1 / lambda + alpha ||Fy - x||^2 / 2
/// for an orthonormal analysis operator F, written into `out`.
void prox_denoise_energy(std::span<const double> x, std::span<const double> fy, double alpha,
                         double lambda, std::span<double> out);
std::vector<double> prox_denoise_energy(std::span<const double> x, std::span<const double> fy,
                                        double alpha, double lambda);

/// Derivative-free prox: brackets the minimizer of f(u) + (u - x)^2 / 2 and
/// refines it by golden-section search to an absolute tolerance of 1e-10.
/// A Custom function with only a double evaluator limits the accuracy to
/// roughly sqrt(2^-52 |f|). Throws NoMinimizerError when the bracket exceeds
/// 2^60 in width.
double prox_numeric_oracle(const ScalarConvexFn& f, double x);

}  // namespace nshmc
