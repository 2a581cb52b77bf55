#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "torq/error.hpp"
#include "torq/frenet.hpp"
#include "torq/synthesis.hpp"

using namespace torq;

TEST(Frenet, CircleHasOrderTwo) {
  for (double r : {0.5, 1.0, 2.0}) {
    const std::vector<double> params{r};
    const auto fr = frenet_apparatus(builtin_curve("circle_origin", params));
    EXPECT_EQ(fr.order, 2);
    for (std::size_t j = 0; j < fr.size(); ++j) EXPECT_NEAR(fr.kappa(j, 1), 1.0 / r, 1e-9);
    EXPECT_LT(frame_orthonormality_defect(fr), 1e-12);
  }
}

TEST(Frenet, LogSpiralCurvature) {
  const auto fr = frenet_apparatus(builtin_curve("log_spiral"));
  EXPECT_EQ(fr.order, 2);
  for (std::size_t j = 0; j < fr.size(); ++j) EXPECT_NEAR(fr.kappa(j, 1) * fr.s[j], 1.0, 1e-6);
}

TEST(Frenet, LoxodromeCurvatures) {
  const auto fr = frenet_apparatus(builtin_curve("cone_loxodrome"));
  EXPECT_EQ(fr.order, 3);
  for (std::size_t j = 0; j < fr.size(); ++j) {
    EXPECT_NEAR(fr.kappa(j, 1), std::sqrt(39.0) / (2 * fr.s[j]), 1e-6);
    EXPECT_NEAR(fr.kappa(j, 2), -3.0 / (2 * fr.s[j]), 1e-6);
  }
  const auto sp = detect_special(fr, 1e-6);
  EXPECT_TRUE(sp.general_helix);
  EXPECT_NEAR(sp.helix_ratio, -3.0 / std::sqrt(39.0), 1e-6);
}

TEST(Frenet, HelixClosedForm) {
  // Radius a, rise c per radian: κ = a/(a² + c²), τ = c/(a² + c²).
  const std::vector<double> params{1.5, 2.0};
  const auto fr = frenet_apparatus(builtin_curve("helix", params));
  const double c = 2.0, d = 1.5 * 1.5 + c * c;
  for (std::size_t j = 0; j < fr.size(); j += 7) {
    EXPECT_NEAR(fr.kappa(j, 1), 1.5 / d, 1e-8);
    EXPECT_NEAR(fr.kappa(j, 2), c / d, 1e-8);
  }
}

TEST(Frenet, FrameIsPositivelyOriented) {
  const auto fr = frenet_apparatus(builtin_curve("cone_loxodrome"));
  for (std::size_t j = 0; j < fr.size(); j += 25) {
    Mat f(3, 3);
    for (int i = 0; i < 3; ++i) f.col(i) = fr.frames[j][i];
    EXPECT_NEAR(f.determinant(), 1.0, 1e-10);
  }
}

TEST(Frenet, FormulaResidual) {
  for (const char* name : {"cone_loxodrome", "rectifying", "helix", "hyperbolic_vertical_line"}) {
    const auto c = builtin_curve(name);
    const double mid = 0.5 * (c.grid.front() + c.grid.back());
    EXPECT_LT(frenet_formula_residual(c, mid), 1e-5) << name;
  }
}

TEST(Frenet, SpecialCurves) {
  const auto line = detect_special(frenet_apparatus(builtin_curve("hyperbolic_vertical_line")), 1e-6);
  EXPECT_TRUE(line.geodesic);
  const std::vector<double> r{2.0};
  const auto circle = detect_special(frenet_apparatus(builtin_curve("circle_origin", r)), 1e-6);
  EXPECT_TRUE(circle.circle);
  EXPECT_NEAR(circle.circle_R, 0.5, 1e-9);
  EXPECT_NEAR(circle.circle_radius, 2.0, 1e-8);
}

TEST(Frenet, ReparametrizationInvariance) {
  AnalyticCurve c;
  c.max_order = 8;
  c.eval = [](double t, int k) {
    const double h = std::numbers::pi / 2;
    Vec v(3);
    v << 2 * std::cos(t + k * h), 2 * std::sin(t + k * h), k == 0 ? t : (k == 1 ? 1.0 : 0.0);
    return v;
  };
  const auto g = std::make_shared<const ChartMetric>(builtin_metric("euclidean", 3));
  const auto fr = frenet_apparatus(reparametrize_arclength(make_analytic_curve(g, c, 0, 3, 61, false), 61));
  for (std::size_t j = 0; j < fr.size(); ++j) {
    EXPECT_NEAR(fr.kappa(j, 1), 0.4, 1e-6);
    EXPECT_NEAR(fr.kappa(j, 2), 0.2, 1e-6);
  }
}

TEST(Frenet, RejectsNonUnitSpeed) {
  AnalyticCurve c;
  c.max_order = 1;
  c.eval = [](double t, int k) {
    Vec v(3);
    if (k == 0) v << 2 * t, 0, 0;
    else v << 2, 0, 0;
    return v;
  };
  const auto g = std::make_shared<const ChartMetric>(builtin_metric("euclidean", 3));
  auto curve = make_analytic_curve(g, c, 0, 1, 11, true);
  EXPECT_THROW(frenet_apparatus(curve), PreconditionError);
}

TEST(Frenet, SerialAndParallelAgree) {
  const auto c = builtin_curve("cone_loxodrome");
  FrenetOptions serial, parallel;
  serial.policy = ExecPolicy::serial;
  parallel.policy = ExecPolicy::parallel;
  const auto a = frenet_apparatus(c, serial), b = frenet_apparatus(c, parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a.curvatures[j], b.curvatures[j]);
    for (std::size_t i = 0; i < a.frames[j].size(); ++i) EXPECT_EQ(a.frames[j][i], b.frames[j][i]);
  }
}
