#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "torq/error.hpp"
#include "torq/slant.hpp"
#include "torq/synthesis.hpp"
#include "torq/torqued.hpp"

using namespace torq;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

double sup_interior(const FrenetData& fr, int i, const std::function<double(double)>& f) {
  double m = 0.0;
  for (std::size_t j = 0; j < fr.size(); ++j) m = std::max(m, std::abs(fr.kappa(j, i) - f(fr.s[j])));
  return m;
}

}  // namespace

TEST(Synthesis, BuiltinCurvePoints) {
  const auto spiral = builtin_curve("log_spiral");
  EXPECT_LT((spiral.analytic->eval(1.0, 0) - v3(1.0 / std::numbers::sqrt2, 0, 0)).norm(), 1e-15);
  const auto lox = builtin_curve("cone_loxodrome");
  EXPECT_LT((lox.analytic->eval(4.0, 0) - v3(1.0, std::sqrt(3.0), 0)).norm(), 1e-14);
  const std::vector<double> r{2.0};
  const auto circle = builtin_curve("circle_origin", r);
  EXPECT_LT((circle.points.front() - v3(2, 0, 0)).norm(), 1e-15);
  EXPECT_THROW(builtin_curve("trefoil"), InputError);
  const std::vector<double> bad{-1.0, 10.0};
  EXPECT_THROW(builtin_curve("log_spiral", bad), InputError);
}

TEST(Synthesis, IntegratedCircle) {
  const double r = 1.5;
  const auto ic = frenet_integrate([&](double) { return 1.0 / r; }, [](double) { return 0.0; }, {}, 0.0,
                                   2.0 * std::numbers::pi * r, 401);
  const Vec center = v3(0, r, 0);
  double worst = 0.0;
  for (const Vec& p : ic.curve.points) worst = std::max(worst, std::abs((p - center).norm() - r));
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT((ic.curve.points.back() - ic.curve.points.front()).norm(), 1e-6);
}

TEST(Synthesis, RecoveredInvariantsMatchPrescribed) {
  const auto kappa = [](double s) { return std::sqrt(39.0) / (2.0 * s); };
  const auto tau = [](double s) { return -3.0 / (2.0 * s); };
  const auto ic = frenet_integrate(kappa, tau, {}, 1.0, 10.0, 401);
  const auto fr = frenet_apparatus(ic.curve);
  EXPECT_LT(sup_interior(fr, 1, kappa), 1e-5);
  EXPECT_LT(sup_interior(fr, 2, tau), 1e-5);

  const auto planar = frenet_integrate([](double s) { return 1.0 / s; }, [](double) { return 0.0; }, {}, 1.0,
                                       10.0, 401);
  const auto fp = frenet_apparatus(planar.curve);
  EXPECT_LT(sup_interior(fp, 1, [](double s) { return 1.0 / s; }), 1e-5);
}

TEST(Synthesis, InvariantsIndependentOfInitialFrame) {
  const auto kappa = [](double s) { return 1.0 + 0.3 * std::sin(s); };
  const auto tau = [](double s) { return 0.5 * std::cos(2.0 * s); };
  std::mt19937_64 rng(3);
  FrameInit other;
  other.point = v3(1, -2, 0.5);
  other.frame = torq::testing::random_rotation(rng);
  const auto a = frenet_apparatus(frenet_integrate(kappa, tau, {}, 0.0, 4.0, 301).curve);
  const auto b = frenet_apparatus(frenet_integrate(kappa, tau, other, 0.0, 4.0, 301).curve);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_NEAR(a.kappa(j, 1), b.kappa(j, 1), 1e-6);
    EXPECT_NEAR(a.kappa(j, 2), b.kappa(j, 2), 1e-6);
  }
}

TEST(Synthesis, IntegratorPreconditions) {
  const auto zero = [](double) { return 0.0; };
  EXPECT_THROW(frenet_integrate(zero, zero, {}, 0.0, 1.0, 11), PreconditionError);
  FrameInit bad;
  bad.frame.col(2) *= -1.0;
  EXPECT_THROW(frenet_integrate([](double) { return 1.0; }, zero, bad, 0.0, 1.0, 11), PreconditionError);
}

TEST(Synthesis, SlantFromPhi) {
  SlantSynthesisConfig config;
  config.phi = sqrt_quadratic_profile(0.5, 0.0, 4.0);
  config.theta = 2.0 * std::numbers::pi / 3.0;
  config.s0 = 1.0;
  config.s1 = 3.0;
  const auto out = synthesize_slant_from_phi(config);
  EXPECT_TRUE(out.verified);
  EXPECT_LT(out.max_cos_defect, 1e-4);
  EXPECT_LT(out.max_phi_defect, 1e-6);

  const auto fr = frenet_apparatus(out.result.curve);
  const auto sr = slant_report(fr, builtin_field("radial_unit", fr.metric), 1e-6);
  EXPECT_NEAR(sr.cos_theta, -0.5, 1e-4);
  // κ = ((φφ')' − 1)/(cos θ φ) with φ² = s²/2 + 4: (φφ')' = 1/2.
  EXPECT_LT(sup_interior(fr, 1, [](double s) { return 1.0 / std::sqrt(s * s / 2.0 + 4.0); }), 1e-6);
}

TEST(Synthesis, AffinePhiGivesLogSpiralBranch) {
  const double theta = 2.0 * std::numbers::pi / 3.0, c = 1.0;
  SlantSynthesisConfig config;
  config.phi = affine_profile(std::sin(theta), c);
  config.theta = theta;
  config.tau0 = 0.0;
  config.s0 = 1.0;
  config.s1 = 3.0;
  const auto out = synthesize_slant_from_phi(config);
  const auto fr = frenet_apparatus(out.result.curve);
  EXPECT_LT(sup_interior(fr, 1, [&](double s) { return -std::cos(theta) / (std::sin(theta) * s + c); }), 1e-6);
  EXPECT_EQ(classify_euclidean_slant(fr).branch, EuclideanBranch::log_spiral);
}

TEST(Synthesis, SlantPreconditions) {
  SlantSynthesisConfig config;
  config.theta = 2.0 * std::numbers::pi / 3.0;
  config.s0 = 1.0;
  config.s1 = 3.0;
  config.phi = constant_profile(2.0);
  EXPECT_THROW(synthesize_slant_from_phi(config), PreconditionError);

  // (φφ')' ≡ 1 makes κ vanish identically.
  config.phi = sqrt_quadratic_profile(1.0, 0.0, 1.0);
  config.tau0 = 0.1;
  EXPECT_THROW(synthesize_slant_from_phi(config), PreconditionError);

  config.phi = sqrt_quadratic_profile(0.5, 0.0, 4.0);
  config.theta = std::numbers::pi / 2.0;
  EXPECT_THROW(synthesize_slant_from_phi(config), PreconditionError);
}

TEST(Synthesis, Concircular) {
  ConcircularSynthesisConfig config;
  config.f3 = affine_profile(-0.25, 2.0);
  const auto out = synthesize_concircular(config);
  EXPECT_TRUE(out.verified);
  EXPECT_FALSE(out.degenerate);
  EXPECT_LT(out.max_theta_defect, 1e-6);
  // τ = −f3'/θ = 1/4.
  for (double t : out.result.tau) EXPECT_NEAR(t, 0.25, 1e-12);

  config.theta = 0.0;
  EXPECT_THROW(synthesize_concircular(config), PreconditionError);

  config.theta = 1.0;
  config.f3 = constant_profile(2.0);
  const auto flat = synthesize_concircular(config);
  EXPECT_TRUE(flat.degenerate);
}

TEST(Synthesis, ConcircularWithTranslatedField) {
  ConcircularSynthesisConfig config;
  config.f3 = affine_profile(-0.25, 2.0);
  config.init.point = v3(0.5, -1.0, 2.0);
  const auto out = synthesize_concircular(config);
  EXPECT_TRUE(out.verified);
  const auto fr = frenet_apparatus(out.result.curve);
  const auto rep = torqued_report(fr, out.field, 1e-6);
  EXPECT_NEAR(rep.theta_hat, 1.0, 1e-4);
  EXPECT_LT(concircular_ode_residual(fr, rep.rho, rep.theta_hat), 1e-4);
}
