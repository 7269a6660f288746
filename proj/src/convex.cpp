#include "nshmc/convex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nshmc/errors.hpp"

namespace nshmc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": argument must be finite");
}

void validate(const ConvexDescriptor& d) {
  std::visit(overloaded{
                 [](const Abs&) {},
                 [](const PowerP& f) {
                   if (!(f.gamma > 0.0)) throw DomainError("PowerP: gamma must be positive");
                   if (!(f.p >= 1.0)) throw DomainError("PowerP: p must be >= 1");
                 },
                 [](const QuadL1& f) {
                   if (!(f.a > 0.0) || !(f.b > 0.0))
                     throw DomainError("QuadL1: a and b must be positive");
                 },
                 [](const ScaledAbs& f) {
                   if (!(f.t > 0.0)) throw DomainError("ScaledAbs: t must be positive");
                 },
                 [](const Custom& f) {
                   if (!f.evaluator) throw DomainError("Custom: empty evaluator");
                 },
             },
             d);
}

double copysign_magnitude(double magnitude, double x) {
  return x < 0.0 ? -magnitude : magnitude;
}

}  // namespace

ScalarConvexFn::ScalarConvexFn(ConvexDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  validate(descriptor_);
}

ScalarConvexFn ScalarConvexFn::custom_extended(std::function<long double(long double)> f) {
  if (!f) throw DomainError("Custom: empty evaluator");
  auto evaluator = [f](double x) { return static_cast<double>(f(x)); };
  return ScalarConvexFn(Custom{evaluator, std::move(f)});
}

double ScalarConvexFn::operator()(double x) const {
  return std::visit(overloaded{
                        [x](const Abs&) { return std::fabs(x); },
                        [x](const PowerP& f) { return std::pow(std::fabs(x), f.p) / f.gamma; },
                        [x](const QuadL1& f) { return f.a * std::fabs(x) + f.b * x * x; },
                        [x](const ScaledAbs& f) { return f.t * std::fabs(x); },
                        [x](const Custom& f) { return f.evaluator(x); },
                    },
                    descriptor_);
}

long double ScalarConvexFn::evaluate_extended(long double x) const {
  return std::visit(
      overloaded{
          [x](const Abs&) { return std::fabs(x); },
          [x](const PowerP& f) {
            return std::pow(std::fabs(x), static_cast<long double>(f.p)) /
                   static_cast<long double>(f.gamma);
          },
          [x](const QuadL1& f) {
            return static_cast<long double>(f.a) * std::fabs(x) +
                   static_cast<long double>(f.b) * x * x;
          },
          [x](const ScaledAbs& f) { return static_cast<long double>(f.t) * std::fabs(x); },
          [x](const Custom& f) {
            if (f.extended) return f.extended(x);
            return static_cast<long double>(f.evaluator(static_cast<double>(x)));
          },
      },
      descriptor_);
}

double ScalarConvexFn::prox(double x) const {
  return std::visit(overloaded{
                        [x](const Abs&) { return prox_soft_threshold(x, 1.0); },
                        [x](const PowerP& f) { return prox_power(x, f.gamma, f.p); },
                        [x](const QuadL1& f) { return prox_quad_l1(x, f.a, f.b); },
                        [x](const ScaledAbs& f) { return prox_soft_threshold(x, f.t); },
                        [this, x](const Custom&) { return prox_numeric_oracle(*this, x); },
                    },
                    descriptor_);
}

bool ScalarConvexFn::differentiable() const {
  if (const auto* f = std::get_if<PowerP>(&descriptor_)) return f->p > 1.0;
  return false;
}

double ScalarConvexFn::derivative(double x) const {
  const auto* f = std::get_if<PowerP>(&descriptor_);
  if (f == nullptr || !(f->p > 1.0))
    throw CapabilityError("derivative requested for a non-differentiable function");
  if (x == 0.0) return 0.0;
  const double magnitude = f->p * std::pow(std::fabs(x), f->p - 1.0) / f->gamma;
  return copysign_magnitude(magnitude, x);
}

double ScalarConvexFn::sample_subgradient(double x, Rng& rng) const {
  return std::visit(
      overloaded{
          [&](const Abs&) { return subgrad_abs_sample(x, rng); },
          [&](const PowerP& f) {
            if (f.p == 1.0) return subgrad_abs_sample(x, rng) / f.gamma;
            require_finite(x, "sample_subgradient");
            return derivative(x);
          },
          [&](const QuadL1& f) { return f.a * subgrad_abs_sample(x, rng) + 2.0 * f.b * x; },
          [&](const ScaledAbs& f) { return f.t * subgrad_abs_sample(x, rng); },
          [](const Custom&) -> double {
            throw CapabilityError("Custom functions have no subgradient sampler");
          },
      },
      descriptor_);
}

double subgrad_abs_sample(double x, Rng& rng) {
  require_finite(x, "subgrad_abs_sample");
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return rng.uniform(-1.0, 1.0);
}

double prox_soft_threshold(double x, double t) {
  if (!(t > 0.0)) throw DomainError("prox_soft_threshold: t must be positive");
  require_finite(x, "prox_soft_threshold");
  const double shrunk = std::fabs(x) - t;
  return shrunk > 0.0 ? copysign_magnitude(shrunk, x) : 0.0;
}

double prox_power(double x, double gamma, double p) {
  if (!(gamma > 0.0)) throw DomainError("prox_power: gamma must be positive");
  if (!(p >= 1.0)) throw DomainError("prox_power: p must be >= 1");
  require_finite(x, "prox_power");
  if (p == 1.0) return prox_soft_threshold(x, 1.0 / gamma);
  if (p == 2.0) return gamma * x / (gamma + 2.0);

  // Root of g(u) = u + c u^(p-1) - |x| on [0, |x|]; g is increasing, g(0) <= 0 <= g(|x|).
  const double target = std::fabs(x);
  if (target == 0.0) return 0.0;
  const double c = p / gamma;
  auto g = [&](double u) { return u + c * std::pow(u, p - 1.0) - target; };
  double lo = 0.0;
  double hi = target;
  double u = 0.5 * target;
  for (int it = 0; it < 200; ++it) {
    const double gu = g(u);
    if (gu == 0.0) break;
    if (gu < 0.0)
      lo = u;
    else
      hi = u;
    const double slope = 1.0 + c * (p - 1.0) * std::pow(u, p - 2.0);
    double next = u - gu / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * u || hi - lo <= 0.0) {
      u = next;
      break;
    }
    u = next;
  }
  return copysign_magnitude(u, x);
}

double prox_quad_l1(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("prox_quad_l1: a and b must be positive");
  require_finite(x, "prox_quad_l1");
  const double shrunk = std::fabs(x) - a;
  return shrunk > 0.0 ? copysign_magnitude(shrunk / (1.0 + 2.0 * b), x) : 0.0;
}

void prox_denoise_energy(std::span<const double> x, std::span<const double> fy, double alpha,
                         double lambda, std::span<double> out) {
  if (x.size() != fy.size() || x.size() != out.size())
    throw DomainError("prox_denoise_energy: length mismatch");
  if (!(alpha > 0.0)) throw DomainError("prox_denoise_energy: alpha must be positive");
  if (!(lambda > 0.0)) throw DomainError("prox_denoise_energy: lambda must be positive");
  const double scale = 1.0 / (1.0 + alpha);
  const double level = 1.0 / (lambda * (1.0 + alpha));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double centre = (x[i] + alpha * fy[i]) * scale;
    const double shrunk = std::fabs(centre) - level;
    out[i] = shrunk > 0.0 ? copysign_magnitude(shrunk, centre) : 0.0;
  }
}

std::vector<double> prox_denoise_energy(std::span<const double> x, std::span<const double> fy,
                                        double alpha, double lambda) {
  std::vector<double> out(x.size());
  prox_denoise_energy(x, fy, alpha, lambda, out);
  return out;
}

double prox_numeric_oracle(const ScalarConvexFn& f, double x) {
  using real = long double;
  require_finite(x, "prox_numeric_oracle");
  const real xc = x;
  if (!std::isfinite(f.evaluate_extended(xc)))
    throw DomainError("prox_numeric_oracle: f must be finite at x");

  // phi(a) - phi(b) with the quadratic part differenced analytically, so the
  // comparison does not lose digits to the magnitude of (u - x)^2.
  auto less = [&](real a, real b) {
    const real fa = f.evaluate_extended(a);
    const real fb = f.evaluate_extended(b);
    if (std::isinf(fa) || std::isinf(fb)) return fa < fb;
    return (fa - fb) + (a - b) * ((a + b) / 2 - xc) < 0;
  };

  constexpr real max_width = 0x1.0p60L;
  real step = std::fabs(xc) + 1;
  real lo = xc - step;
  real hi = xc + step;
  real mid = xc;
  while (less(lo, mid)) {
    hi = mid;
    mid = lo;
    step *= 2;
    lo = mid - step;
    if (hi - lo > max_width) throw NoMinimizerError("prox_numeric_oracle: no minimizer found");
  }
  while (less(hi, mid)) {
    lo = mid;
    mid = hi;
    step *= 2;
    hi = mid + step;
    if (hi - lo > max_width) throw NoMinimizerError("prox_numeric_oracle: no minimizer found");
  }

  constexpr real tolerance = 1e-10L;
  const real inv_phi = (std::sqrt(5.0L) - 1) / 2;
  real c = hi - inv_phi * (hi - lo);
  real d = lo + inv_phi * (hi - lo);
  for (int it = 0; it < 400 && hi - lo > tolerance; ++it) {
    if (less(c, d)) {
      hi = d;
      d = c;
      c = hi - inv_phi * (hi - lo);
    } else {
      lo = c;
      c = d;
      d = lo + inv_phi * (hi - lo);
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

}  // namespace nshmc
