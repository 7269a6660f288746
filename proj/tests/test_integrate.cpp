#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "nshmc/convex.hpp"
#include "nshmc/errors.hpp"
#include "nshmc/integrate.hpp"
#include "nshmc/model.hpp"

using namespace nshmc;

namespace {

PotentialEnergy half_square() { return gg_energy({2.0, 2.0}); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

PhaseState flip(PhaseState s) {
  for (double& q : s.momentum) q = -q;
  return s;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

/// Central finite-difference Jacobian determinant of a 1-D step map (x, q) -> (x', q').
template <typename Step>
double jacobian_det(const Step& step, double x, double q, double h) {
  const PhaseState xp = step({{x + h}, {q}});
  const PhaseState xm = step({{x - h}, {q}});
  const PhaseState qp = step({{x}, {q + h}});
  const PhaseState qm = step({{x}, {q - h}});
  const double dxdx = (xp.position[0] - xm.position[0]) / (2 * h);
  const double dqdx = (xp.momentum[0] - xm.momentum[0]) / (2 * h);
  const double dxdq = (qp.position[0] - qm.position[0]) / (2 * h);
  const double dqdq = (qp.momentum[0] - qm.momentum[0]) / (2 * h);
  return det2(dxdx, dxdq, dqdx, dqdq);
}

}  // namespace

TEST(SmoothStep, HandExample) {
  const PhaseState s = leapfrog_smooth_step({{1.0}, {0.0}}, half_square(), 0.1);
  EXPECT_NEAR(s.position[0], 0.995, 1e-15);
  EXPECT_NEAR(s.momentum[0], -0.09975, 1e-15);
}

TEST(SmoothStep, OriginIsFixed) {
  for (double eps : {0.0, 0.1, 3.0}) {
    const PhaseState s = leapfrog_smooth_step({{0.0}, {0.0}}, half_square(), eps);
    EXPECT_EQ(s.position[0], 0.0);
    EXPECT_EQ(s.momentum[0], 0.0);
  }
}

TEST(SmoothStep, EnergyErrorSmall) {
  Rng rng(1);
  const PhaseState start{{1.0}, {0.0}};
  const PhaseState end = integrate_trajectory(start, half_square(), {0.01, 100},
                                              IntegratorKind::SmoothGradient, rng);
  EXPECT_LT(std::fabs(hamiltonian_eval(end, half_square()) - hamiltonian_eval(start, half_square())),
            1e-3);
}

TEST(SubgradStep, HandExampleAndMirror) {
  Rng rng(2);
  const PotentialEnergy e = gg_energy({1.0, 1.0});
  const PhaseState s = leapfrog_subgrad_step({{2.0}, {0.0}}, e, 0.1, rng);
  EXPECT_DOUBLE_EQ(s.position[0], 1.995);
  EXPECT_DOUBLE_EQ(s.momentum[0], -0.1);
  const PhaseState m = leapfrog_subgrad_step({{-2.0}, {0.0}}, e, 0.1, rng);
  EXPECT_EQ(m.position[0], -s.position[0]);
  EXPECT_EQ(m.momentum[0], -s.momentum[0]);
}

TEST(SubgradStep, EqualsSmoothForDifferentiableEnergy) {
  Rng rng(3);
  const PotentialEnergy e = gg_energy({1.0, 2.0}, 3);
  for (int i = 0; i < 500; ++i) {
    const PhaseState s{gaussian_momentum_sample(3, rng), gaussian_momentum_sample(3, rng)};
    const PhaseState a = leapfrog_subgrad_step(s, e, 0.17, rng);
    const PhaseState b = leapfrog_smooth_step(s, e, 0.17);
    ASSERT_LT(max_abs_diff(a.position, b.position), 1e-14);
    ASSERT_LT(max_abs_diff(a.momentum, b.momentum), 1e-14);
  }
}

TEST(ProxStep, HandExamples) {
  const PotentialEnergy e = gg_energy({1.0, 1.0});
  const PhaseState a = leapfrog_prox_step({{2.0}, {0.0}}, e, 0.1);
  EXPECT_DOUBLE_EQ(a.position[0], 1.995);
  EXPECT_DOUBLE_EQ(a.momentum[0], -0.1);
  const PhaseState b = leapfrog_prox_step({{0.5}, {0.0}}, e, 0.1);
  EXPECT_DOUBLE_EQ(b.position[0], 0.4975);
}

TEST(ProxStep, OriginIsFixedForBuiltins) {
  for (const auto& f : {ScalarConvexFn::abs(), ScalarConvexFn::power(1.0, 1.5),
                        ScalarConvexFn::quad_l1(10.0, 5.0), ScalarConvexFn::scaled_abs(2.0)}) {
    const PhaseState s = leapfrog_prox_step({{0.0, 0.0}, {0.0, 0.0}}, PotentialEnergy::separable(f, 2), 0.3);
    EXPECT_EQ(s.position, (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(s.momentum, (std::vector<double>{0.0, 0.0}));
  }
}

TEST(ProxStep, ResidualIsGradientAtProx) {
  // For differentiable E the kick x - prox(x) is grad E(prox(x)), not grad E(x).
  const PotentialEnergy e = gg_energy({1.0, 2.0});
  const std::vector<double> x{3.0};
  std::vector<double> u(1);
  std::vector<double> g(1);
  e.prox(x, u);
  e.gradient(u, g);
  EXPECT_NEAR(x[0] - u[0], g[0], 1e-14);
  e.gradient(x, g);
  EXPECT_GT(std::fabs(x[0] - u[0] - g[0]), 1.0);
}

TEST(Trajectory, SingleStepMatchesStep) {
  Rng rng(4);
  const PotentialEnergy e = gg_energy({1.0, 1.5}, 2);
  const PhaseState s{{0.7, -1.2}, {0.3, 0.9}};
  EXPECT_EQ(integrate_trajectory(s, e, {0.1, 1}, IntegratorKind::ProximalScheme2, rng).position,
            leapfrog_prox_step(s, e, 0.1).position);
  EXPECT_EQ(integrate_trajectory(s, e, {0.1, 1}, IntegratorKind::SmoothGradient, rng).momentum,
            leapfrog_smooth_step(s, e, 0.1).momentum);
  Rng r1(5);
  Rng r2(5);
  EXPECT_EQ(integrate_trajectory(s, e, {0.1, 1}, IntegratorKind::SubgradientScheme1, r1).position,
            leapfrog_subgrad_step(s, e, 0.1, r2).position);
}

TEST(Trajectory, TwoStepsComposeExactly) {
  Rng rng(6);
  const PotentialEnergy e = gg_energy({1.0, 1.0});
  const PhaseState start{{2.0}, {0.0}};
  const PhaseState two = integrate_trajectory(start, e, {0.1, 2}, IntegratorKind::ProximalScheme2, rng);
  const PhaseState manual = leapfrog_prox_step(leapfrog_prox_step(start, e, 0.1), e, 0.1);
  EXPECT_EQ(two.position, manual.position);
  EXPECT_EQ(two.momentum, manual.momentum);
  EXPECT_DOUBLE_EQ(two.position[0], 1.98);
  EXPECT_DOUBLE_EQ(two.momentum[0], -0.2);
}

TEST(Trajectory, ZeroStepSizeIsIdentity) {
  Rng rng(7);
  const PotentialEnergy e = gg_energy({1.0, 1.0}, 2);
  const PhaseState s{{0.4, -3.0}, {1.0, 2.0}};
  const PhaseState t = integrate_trajectory(s, e, {0.0, 10}, IntegratorKind::ProximalScheme2, rng);
  EXPECT_EQ(t.position, s.position);
  EXPECT_EQ(t.momentum, s.momentum);
}

TEST(Trajectory, ReversibleAwayFromKinks) {
  Rng rng(8);
  const PotentialEnergy e = gg_energy({1.0, 1.0}, 1);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const PhaseState s{{rng.uniform(-4.0, 4.0)}, {rng.normal()}};
    const LeapfrogConfig cfg{0.05, 10};
    // Kinks of x - prox(x) for |x| sit at x = +-1.
    PhaseState probe = s;
    bool near_kink = std::fabs(std::fabs(probe.position[0]) - 1.0) < 1e-3;
    for (std::size_t l = 0; l < cfg.steps && !near_kink; ++l) {
      probe = leapfrog_prox_step(probe, e, cfg.epsilon);
      near_kink = std::fabs(std::fabs(probe.position[0]) - 1.0) < 1e-3;
    }
    if (near_kink) continue;
    const PhaseState fwd = integrate_trajectory(s, e, cfg, IntegratorKind::ProximalScheme2, rng);
    const PhaseState back = flip(integrate_trajectory(flip(fwd), e, cfg, IntegratorKind::ProximalScheme2, rng));
    ASSERT_LT(std::fabs(back.position[0] - s.position[0]), 1e-9);
    ASSERT_LT(std::fabs(back.momentum[0] - s.momentum[0]), 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(Trajectory, ReversibleSmooth) {
  Rng rng(9);
  const PotentialEnergy e = gg_energy({1.0, 1.5}, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const PhaseState s{gaussian_momentum_sample(3, rng), gaussian_momentum_sample(3, rng)};
    const LeapfrogConfig cfg{0.1, 10};
    const PhaseState fwd = integrate_trajectory(s, e, cfg, IntegratorKind::SmoothGradient, rng);
    const PhaseState back = flip(integrate_trajectory(flip(fwd), e, cfg, IntegratorKind::SmoothGradient, rng));
    ASSERT_LT(max_abs_diff(back.position, s.position), 1e-9);
    ASSERT_LT(max_abs_diff(back.momentum, s.momentum), 1e-9);
  }
}

TEST(Trajectory, VolumePreserving) {
  Rng rng(10);
  const PotentialEnergy smooth = gg_energy({1.0, 1.5});
  const PotentialEnergy kinked = gg_energy({1.0, 1.0});
  const double eps = 0.1;
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(0.2, 3.0) * rng.sign();
    const double q = rng.normal();
    // |x|^1.5 has unbounded curvature at the origin; keep the step clear of it.
    const PhaseState smooth_mid = leapfrog_smooth_step({{x}, {q}}, smooth, eps);
    if (std::fabs(smooth_mid.position[0]) > 0.1) {
      EXPECT_NEAR(jacobian_det([&](const PhaseState& s) { return leapfrog_smooth_step(s, smooth, eps); }, x, q, 1e-5),
                  1.0, 1e-5);
    }
    // Stay off the residual kinks at |x| = 1 for the whole step.
    const PhaseState mid = leapfrog_prox_step({{x}, {q}}, kinked, eps);
    if (std::fabs(std::fabs(x) - 1.0) < 0.05 || std::fabs(std::fabs(mid.position[0]) - 1.0) < 0.05) continue;
    EXPECT_NEAR(jacobian_det([&](const PhaseState& s) { return leapfrog_prox_step(s, kinked, eps); }, x, q, 1e-6),
                1.0, 1e-5);
  }
}

TEST(Trajectory, SchemesCloseNearKink) {
  Rng rng(11);
  const double a = 10.0;
  const double b = 5.0;
  const PotentialEnergy e = PotentialEnergy::separable(ScalarConvexFn::quad_l1(a, b), 1);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-a / (b + 1.0), a / (b + 1.0));
    const double q = rng.normal();
    const double eps = rng.uniform(0.001, 0.2);
    const PhaseState s1 = leapfrog_subgrad_step({{x}, {q}}, e, eps, rng);
    const PhaseState s2 = leapfrog_prox_step({{x}, {q}}, e, eps);
    const double gap = std::fabs(s1.position[0] - s2.position[0]);
    // Subgradient a sign(x) + 2bx against the dead-zone residual x.
    ASSERT_LE(gap, 0.5 * eps * eps * (a + (2.0 * b - 1.0) * std::fabs(x)) * (1.0 + 1e-12));
    if (std::fabs(x) <= a / (2.0 * b - 1.0)) {
      ASSERT_LT(gap, eps * eps * a);
    }
  }
}

TEST(Trajectory, CapabilityErrors) {
  Rng rng(12);
  const PotentialEnergy l1 = gg_energy({1.0, 1.0});
  const PhaseState s{{1.0}, {0.0}};
  EXPECT_THROW(leapfrog_smooth_step(s, l1, 0.1), CapabilityError);
  EXPECT_THROW(integrate_trajectory(s, l1, {0.1, 3}, IntegratorKind::SmoothGradient, rng), CapabilityError);
  const PotentialEnergy custom = PotentialEnergy::separable(ScalarConvexFn::custom([](double u) { return u * u; }), 1);
  EXPECT_THROW(leapfrog_subgrad_step(s, custom, 0.1, rng), CapabilityError);
  PotentialEnergy bare(1, [](std::span<const double> x) { return std::fabs(x[0]); });
  EXPECT_THROW(leapfrog_prox_step(s, bare, 0.1), CapabilityError);
  EXPECT_THROW(require_capability(bare, IntegratorKind::SubgradientScheme1), CapabilityError);
}

TEST(Trajectory, ConfigAndShapeErrors) {
  Rng rng(13);
  const PotentialEnergy e = gg_energy({1.0, 1.0}, 2);
  EXPECT_THROW((LeapfrogConfig{-0.1, 10}.validate()), DomainError);
  EXPECT_THROW((LeapfrogConfig{0.1, 0}.validate()), DomainError);
  EXPECT_THROW(integrate_trajectory({{1.0}, {0.0}}, e, {0.1, 1}, IntegratorKind::ProximalScheme2, rng),
               DimensionError);
  EXPECT_THROW(leapfrog_prox_step({{1.0, 2.0}, {0.0}}, e, 0.1), DimensionError);
}
