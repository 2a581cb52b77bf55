#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "torq/error.hpp"
#include "torq/fields.hpp"

using namespace torq;

namespace {

std::shared_ptr<const ChartMetric> metric(const char* name, int dim = 3) {
  return std::make_shared<const ChartMetric>(builtin_metric(name, dim));
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

std::vector<Vec> cloud(std::uint64_t seed, int n, double lo, double hi, double last_lo) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi), w(last_lo, hi);
  std::vector<Vec> out;
  while (out.size() < static_cast<std::size_t>(n)) {
    Vec p = v3(u(rng), u(rng), w(rng));
    if (p.norm() > 0.25) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Fields, BuiltinValues) {
  const auto radial = builtin_field("radial_unit", metric("punctured_euclidean"));
  EXPECT_LT((radial.at(v3(3, 4, 0)) - v3(0.6, 0.8, 0)).norm(), 1e-15);

  const auto em = builtin_field("hyperbolic_em", metric("hyperbolic_upper_half"));
  EXPECT_LT((em.at(v3(0, 0, 2)) - v3(0, 0, -2)).norm(), 1e-15);

  const auto affine = builtin_field("concircular_affine", metric("euclidean"));
  const Vec p = v3(0.3, -1.2, 2.5);
  EXPECT_LT((affine.at(p) - p).norm(), 1e-15);
}

TEST(Fields, MetricMismatchAndUnknownName) {
  EXPECT_THROW(builtin_field("radial_unit", metric("euclidean")), InputError);
  EXPECT_THROW(builtin_field("hyperbolic_em", metric("punctured_euclidean")), InputError);
  EXPECT_THROW(builtin_field("twisted_torqued", metric("euclidean")), InputError);
  EXPECT_THROW(builtin_field("swirl", metric("euclidean")), InputError);
}

TEST(Fields, AnalyticJacobianMatchesDifferences) {
  const auto m = metric("warped_interval_product");
  auto field = builtin_field("twisted_torqued", m);
  const Vec p = v3(0.3, -0.2, 0.5);
  const Mat exact = field.jacobian_at(p);
  field.jacobian = nullptr;
  EXPECT_LT((field.jacobian_at(p) - exact).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Fields, ConstantFieldIsParallel) {
  const auto fit = torse_forming_fit(builtin_field("constant", metric("euclidean")), v3(1, 2, 3));
  EXPECT_NEAR(fit.rho, 0.0, 1e-14);
  EXPECT_LT(fit.omega.norm(), 1e-14);
  EXPECT_LT(fit.residual, 1e-14);
}

TEST(Fields, RadialFitMatchesClosedForm) {
  // ∇_X (E/|E|) = (X − ⟨X, V⟩V)/|E|, so ρ = 1/|E| and ω = −V♭/|E|.
  const auto radial = builtin_field("radial_unit", metric("punctured_euclidean"));
  for (const Vec& p : {v3(2, 0, 0), v3(0, 1.2, 1.6), v3(-1, 2, -2)}) {
    const auto fit = torse_forming_fit(radial, p);
    const Vec V = p / p.norm();
    EXPECT_NEAR(fit.rho, 1.0 / p.norm(), 1e-12);
    EXPECT_LT((fit.omega + V / p.norm()).norm(), 1e-12);
    EXPECT_LT((fit.W + fit.rho * V).norm(), 1e-12);
    EXPECT_LT(fit.residual, 1e-8);
  }
}

TEST(Fields, HyperbolicConformalScalarIsOne) {
  const auto em = builtin_field("hyperbolic_em", metric("hyperbolic_upper_half"));
  for (const Vec& p : cloud(7, 20, -3.0, 3.0, 0.2)) {
    const auto fit = torse_forming_fit(em, p);
    EXPECT_NEAR(fit.rho, 1.0, 1e-10);
    EXPECT_LT(fit.residual, 1e-8);
  }
}

TEST(Fields, GenerativeVectorIsMetricDual) {
  const auto m = metric("hyperbolic_upper_half");
  const auto em = builtin_field("hyperbolic_em", m);
  const Vec p = v3(0.4, -0.7, 1.3);
  const auto fit = torse_forming_fit(em, p);
  const Mat frame = orthonormal_chart_frame(*m, p);
  for (int a = 0; a < 3; ++a) {
    const Vec x = frame.col(a);
    EXPECT_NEAR(inner(*m, p, fit.W, x), fit.omega.dot(x), 1e-10);
  }
}

TEST(Fields, VanishingFieldIsRejected) {
  const auto f = builtin_field("concircular_affine", metric("euclidean"));
  EXPECT_THROW(torse_forming_fit(f, v3(0, 0, 0)), PreconditionError);
}

TEST(Fields, Classification) {
  const auto pts = cloud(11, 60, -3.0, 3.0, -3.0);
  const auto radial = classify_field(builtin_field("radial_unit", metric("punctured_euclidean")), pts, 1e-6);
  EXPECT_EQ(radial.label, FieldClass::anti_torqued);
  EXPECT_TRUE(radial.proper);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(radial.rho[i] * pts[i].norm(), 1.0, 1e-6);

  const std::vector<double> affine{1.0, 1.0, 0.0, 0.0};
  const auto conc = classify_field(builtin_field("concircular_affine", metric("euclidean"), affine), pts, 1e-6);
  EXPECT_EQ(conc.label, FieldClass::concircular);
  EXPECT_LT(conc.max_omega_norm, 1e-10);

  const auto cons = classify_field(builtin_field("constant", metric("euclidean")), pts, 1e-6);
  EXPECT_EQ(cons.label, FieldClass::concircular);
  EXPECT_FALSE(cons.proper);

  const auto wpts = cloud(13, 60, -1.0, 1.0, -1.0);
  const auto tw = classify_field(builtin_field("twisted_torqued", metric("warped_interval_product")), wpts, 1e-6);
  EXPECT_EQ(tw.label, FieldClass::torqued);
  EXPECT_LT(tw.max_abs_VW, 1e-6);
  EXPECT_LT(tw.max_residual, 1e-6);
}

TEST(Fields, LabelsStableUnderTighterTolerance) {
  const auto pts = cloud(17, 40, -3.0, 3.0, 0.2);
  const std::vector<std::pair<FieldSpec, std::vector<Vec>>> cases{
      {builtin_field("radial_unit", metric("punctured_euclidean")), pts},
      {builtin_field("hyperbolic_em", metric("hyperbolic_upper_half")), pts},
      {builtin_field("concircular_affine", metric("euclidean")), pts},
      {builtin_field("twisted_torqued", metric("warped_interval_product")), cloud(19, 40, -1.0, 1.0, -1.0)},
  };
  for (const auto& [field, p] : cases)
    EXPECT_EQ(classify_field(field, p, 1e-6).label, classify_field(field, p, 1e-7).label) << field.name;
}

TEST(Fields, AntiTorquedFieldsAreUnitGeodesic) {
  const auto radial = builtin_field("radial_unit", metric("punctured_euclidean"));
  const auto em = builtin_field("hyperbolic_em", metric("hyperbolic_upper_half"));
  for (const Vec& p : cloud(23, 30, -3.0, 3.0, 0.2)) {
    for (const auto* f : {&radial, &em}) {
      const auto [unit, geo] = unit_geodesic_defect(*f, p);
      EXPECT_LT(unit, 1e-6);
      EXPECT_LT(geo, 1e-6);
    }
  }
}

TEST(Fields, SampledConcircularField) {
  const auto m = metric("euclidean");
  std::vector<Vec> points, vectors;
  const Vec v = v3(1, 0, 0);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        const Vec p = v3(i * 0.5 - 1.5, j * 0.5 - 1.5, k * 0.5 - 1.5);
        points.push_back(p);
        vectors.push_back(2.0 * p + v);
      }
  const auto field = field_from_samples(m, points, vectors);
  EXPECT_TRUE(field.approximate_jacobian);
  EXPECT_DOUBLE_EQ(default_field_tolerance(field), 1e-3);
  const std::vector<Vec> probe{v3(0.2, 0.3, -0.1), v3(-0.6, 0.4, 0.7), v3(0.9, -0.8, 0.1)};
  const auto rep = classify_field(field, probe, default_field_tolerance(field));
  EXPECT_EQ(rep.label, FieldClass::concircular);
  for (double r : rep.rho) EXPECT_NEAR(r, 2.0, 1e-6);
}

TEST(Fields, SerialMatchesParallel) {
  const auto pts = cloud(29, 50, -3.0, 3.0, 0.2);
  const auto f = builtin_field("hyperbolic_em", metric("hyperbolic_upper_half"));
  const auto a = classify_field(f, pts, 1e-6, ExecPolicy::serial);
  const auto b = classify_field(f, pts, 1e-6, ExecPolicy::parallel);
  EXPECT_EQ(a.rho, b.rho);
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_EQ(a.label, b.label);
}
