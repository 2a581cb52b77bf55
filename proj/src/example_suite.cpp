#include "torq/example_suite.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "torq/synthesis.hpp"

namespace torq {
namespace {

template <class F>
double max_over(std::size_t n, F&& f) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(f(j)));
  return m;
}

double mismatch(bool ok) { return ok ? 0.0 : 1.0; }

std::vector<Vec> box_points(std::mt19937_64& rng, int n, double lo, double hi, double last_lo) {
  std::uniform_real_distribution<double> u(lo, hi), w(last_lo, hi);
  std::vector<Vec> out;
  while (out.size() < static_cast<std::size_t>(n)) {
    Vec p(3);
    p << u(rng), u(rng), w(rng);
    if (p.norm() > 0.25) out.push_back(p);
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void spiral_checks(Report& r, ExecPolicy policy) {
  const auto curve = builtin_curve("log_spiral");
  const auto fr = frenet_apparatus(curve, {.policy = policy});
  const auto axis = builtin_field("radial_unit", curve.metric);
  const auto sr = slant_report(fr, axis, 1e-6, policy);
  const std::size_t n = fr.size();
  const double c = 1.0 / std::numbers::sqrt2;
  r.add("log_spiral: kappa s - 1", max_over(n, [&](auto j) { return fr.kappa(j, 1) * fr.s[j] - 1.0; }), 1e-6);
  r.add("log_spiral: cos theta + 1/sqrt2", std::abs(sr.cos_theta + c), 1e-6);
  r.add("log_spiral: f1 - 1/sqrt2", max_over(n, [&](auto j) { return sr.coeffs[j][0] - c; }), 1e-6);
  r.add("log_spiral: g", max_over(n, [&](auto j) { return sr.coeffs[j][2]; }), 1e-6);
  r.add(system_residuals_anti(fr, sr, 1e-6).lines, "log_spiral: ");
}

void loxodrome_checks(Report& r, ExecPolicy policy) {
  const auto curve = builtin_curve("cone_loxodrome");
  const auto fr = frenet_apparatus(curve, {.policy = policy});
  const auto axis = builtin_field("radial_unit", curve.metric);
  const auto sr = slant_report(fr, axis, 1e-6, policy);
  const std::size_t n = fr.size();
  const double g_abs = 3.0 * std::sqrt(3.0) / (2.0 * std::sqrt(13.0));
  r.add("cone_loxodrome: 2 s kappa - sqrt39",
        max_over(n, [&](auto j) { return 2.0 * fr.s[j] * fr.kappa(j, 1) - std::sqrt(39.0); }), 1e-6);
  r.add("cone_loxodrome: 2 s tau + 3",
        max_over(n, [&](auto j) { return 2.0 * fr.s[j] * fr.kappa(j, 2) + 3.0; }), 1e-6);
  r.add("cone_loxodrome: cos theta + sqrt3/sqrt13",
        std::abs(sr.cos_theta + std::sqrt(3.0) / std::sqrt(13.0)), 1e-6);
  r.add("cone_loxodrome: f1 - 1/2", max_over(n, [&](auto j) { return sr.coeffs[j][0] - 0.5; }), 1e-6);
  r.add("cone_loxodrome: rho s - 2", max_over(n, [&](auto j) { return sr.rho[j] * fr.s[j] - 2.0; }), 1e-6);
  r.add("cone_loxodrome: |g| - 3 sqrt3/(2 sqrt13)",
        max_over(n, [&](auto j) { return std::abs(sr.coeffs[j][2]) - g_abs; }), 1e-6);
  r.add(system_residuals_anti(fr, sr, 1e-5).lines, "cone_loxodrome: ");

  const std::size_t mid = n / 2;
  const double printed_g = 7.0 * std::sqrt(3.0) / (4.0 * std::sqrt(13.0));
  r.diagnostics.push_back(
      "cone_loxodrome: printed rho = 1/s disagrees with the computed rho = 2/s (|gamma(s)| = s/2); "
      "at s = " + fmt(fr.s[mid]) + " rho s = " + fmt(sr.rho[mid] * fr.s[mid]));
  r.diagnostics.push_back(
      "cone_loxodrome: printed g = 7 sqrt3/(4 sqrt13) = " + fmt(printed_g) +
      " violates f1^2 + cos^2 theta + g^2 = 1 (sum " +
      fmt(0.25 + 3.0 / 13.0 + printed_g * printed_g) + "); computed g = " + fmt(sr.coeffs[mid][2]) +
      ", |g| = 3 sqrt3/(2 sqrt13) = " + fmt(g_abs));
}

void field_checks(Report& r, ExecPolicy policy) {
  std::mt19937_64 rng(20240601);
  const auto punctured = std::make_shared<const ChartMetric>(builtin_metric("punctured_euclidean", 3));
  const auto flat = std::make_shared<const ChartMetric>(builtin_metric("euclidean", 3));
  const auto hyperbolic = std::make_shared<const ChartMetric>(builtin_metric("hyperbolic_upper_half", 3));
  const auto warped = std::make_shared<const ChartMetric>(builtin_metric("warped_interval_product", 3));

  const auto pts = box_points(rng, 100, -3.0, 3.0, -3.0);
  const auto radial = builtin_field("radial_unit", punctured);
  const auto rr = classify_field(radial, pts, 1e-6, policy);
  r.add("radial_unit: label anti_torqued", mismatch(rr.label == FieldClass::anti_torqued), 0.5);
  r.add("radial_unit: rho |p| - 1",
        max_over(pts.size(), [&](auto i) { return rr.rho[i] * pts[i].norm() - 1.0; }), 1e-6);

  const auto hpts = box_points(rng, 100, -3.0, 3.0, 0.2);
  const auto em = builtin_field("hyperbolic_em", hyperbolic);
  const auto hr = classify_field(em, hpts, 1e-6, policy);
  r.add("hyperbolic_em: label anti_torqued", mismatch(hr.label == FieldClass::anti_torqued), 0.5);
  r.add("hyperbolic_em: rho - 1", max_over(hpts.size(), [&](auto i) { return hr.rho[i] - 1.0; }), 1e-6);

  const std::vector<double> affine{1.0, 1.0, 0.0, 0.0};
  const auto cr = classify_field(builtin_field("concircular_affine", flat, affine), pts, 1e-6, policy);
  r.add("concircular_affine: label concircular", mismatch(cr.label == FieldClass::concircular), 0.5);
  r.add("concircular_affine: |omega|", cr.max_omega_norm, 1e-8);

  const auto wpts = box_points(rng, 100, -1.0, 1.0, -1.0);
  const auto tr = classify_field(builtin_field("twisted_torqued", warped), wpts, 1e-6, policy);
  r.add("twisted_torqued: label torqued", mismatch(tr.label == FieldClass::torqued), 0.5);
  r.add("twisted_torqued: <V, W>", tr.max_abs_VW, 1e-6);

  for (const auto& [field, samples] : {std::pair{&radial, &pts}, std::pair{&em, &hpts}}) {
    double norm_defect = 0.0, geodesic_defect = 0.0;
    for (const Vec& p : *samples) {
      const auto [a, b] = unit_geodesic_defect(*field, p);
      norm_defect = std::max(norm_defect, a);
      geodesic_defect = std::max(geodesic_defect, b);
    }
    r.add(field->name + ": |<V,V> - 1|", norm_defect, 1e-6);
    r.add(field->name + ": |nabla_V V|", geodesic_defect, 1e-6);
  }
}

void branch_checks(Report& r, ExecPolicy policy) {
  json branches = json::object();
  auto classify = [&](const CurveSamples& curve, const std::string& label) {
    const auto fr = frenet_apparatus(curve, {.policy = policy});
    auto e = classify_euclidean_slant(fr);
    branches[label] = to_string(e.branch);
    return std::pair{fr, e};
  };

  const auto [fc, circle] = classify(builtin_curve("circle_origin"), "circle_origin");
  r.add("circle_origin: branch circle_origin", mismatch(circle.branch == EuclideanBranch::circle_origin), 0.5);
  r.add("circle_origin: cos theta + 1", std::abs(circle.cos_theta + 1.0), 1e-8);

  const auto [fl, spiral] = classify(builtin_curve("log_spiral"), "log_spiral");
  r.add("log_spiral: branch log_spiral", mismatch(spiral.branch == EuclideanBranch::log_spiral), 0.5);
  r.add("log_spiral: |slope| - sin theta", spiral.slope_defect, 1e-6);
  r.add("log_spiral: kappa law", spiral.kappa_law_residual, 1e-6);

  const auto rect = builtin_curve("rectifying");
  const auto [fr, rc] = classify(rect, "rectifying");
  r.add("rectifying: branch rectifying", mismatch(rc.branch == EuclideanBranch::rectifying), 0.5);
  r.add("rectifying: <gamma, N>", rc.max_abs_gamma_N, 1e-6);
  const auto sr = slant_report(fr, builtin_field("radial_unit", rect.metric), 1e-6, policy);
  const auto law = ratio_law_check(fr, sr, 1e-5);
  r.add("rectifying: c - 1", std::abs(law.c_hat - 1.0), 1e-5);
  r.add("rectifying: ratio law", law.residual, 1e-5);

  SlantSynthesisConfig config;
  config.phi = sqrt_quadratic_profile(0.5, 0.0, 4.0);
  config.theta = 2.0 * std::numbers::pi / 3.0;
  config.s0 = 1.0;
  config.s1 = 3.0;
  const auto synth = synthesize_slant_from_phi(config);
  const auto [fd, generic] = classify(synth.result.curve, "synthesized");
  r.add("synthesized: branch generic", mismatch(generic.branch == EuclideanBranch::generic), 0.5);
  r.add(generic.generic_residuals, "synthesized: ");
  r.classification_branch = std::move(branches);
}

void concircular_checks(Report& r, ExecPolicy policy) {
  ConcircularSynthesisConfig config;
  config.f3 = affine_profile(-0.25, 2.0);
  const auto cs = synthesize_concircular(config);
  const auto fr = frenet_apparatus(cs.result.curve, {.policy = policy});
  const auto tr = torqued_report(fr, cs.field, 1e-6, policy);
  r.add("concircular: theta - 1", std::abs(tr.theta_hat - 1.0), 1e-4);
  r.add(system_residuals_torqued(fr, tr, 1e-5).lines, "concircular: ");
  r.add("concircular: ODE", concircular_ode_residual(fr, tr.rho, tr.theta_hat), 1e-4);
}

}  // namespace

Report example_suite(ExecPolicy policy) {
  Report r;
  r.input = {{"command", "verify-examples"}};
  spiral_checks(r, policy);
  loxodrome_checks(r, policy);
  field_checks(r, policy);
  branch_checks(r, policy);
  concircular_checks(r, policy);
  return r;
}

}  // namespace torq
