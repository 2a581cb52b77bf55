#include "torq/slant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "along.hpp"
#include "torq/error.hpp"

namespace torq {

using detail::column;
using detail::derivative;
using detail::kappa_column;
using detail::max_abs;

std::string to_string(SlantCase c) {
  switch (c) {
    case SlantCase::tangent_parallel: return "tangent_parallel";
    case SlantCase::normal_parallel: return "normal_parallel";
    case SlantCase::generic: return "generic";
  }
  return "unknown";
}

std::string to_string(EuclideanBranch b) {
  switch (b) {
    case EuclideanBranch::circle_origin: return "circle_origin";
    case EuclideanBranch::log_spiral: return "log_spiral";
    case EuclideanBranch::rectifying: return "rectifying";
    case EuclideanBranch::generic: return "generic";
    case EuclideanBranch::none: return "none";
  }
  return "unknown";
}

std::vector<double> angle_function(const FrenetData& frenet, const FieldSpec& axis,
                                   bool* tangential) {
  if (frenet.size() == 0) throw InputError("empty Frenet data");
  const std::size_t index = frenet.frame_size >= 2 ? 1 : 0;
  if (tangential) *tangential = index == 0;
  std::vector<double> out(frenet.size());
  for (std::size_t j = 0; j < frenet.size(); ++j)
    out[j] = inner(*frenet.metric, frenet.points[j], axis.at(frenet.points[j]),
                   frenet.frames[j][index]);
  return out;
}

SlantReport slant_report(const FrenetData& frenet, const FieldSpec& axis, double tol,
                         ExecPolicy policy) {
  if (frenet.size() == 0) throw InputError("empty Frenet data");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  SlantReport r;
  r.tol = tol;
  r.s = frenet.s;

  const std::vector<Vec> v = detail::field_along(frenet, axis, policy);
  const TorseFormingReport fit =
      classify_field(axis, frenet.points, default_field_tolerance(axis), policy);
  r.axis_label = fit.label;
  r.rho = fit.rho;
  r.W = fit.W;
  if (fit.label != FieldClass::anti_torqued)
    r.diagnostics.push_back("axis is classified " + to_string(fit.label) +
                            ", not anti_torqued; the anti-torqued systems may not apply");

  r.coeffs = detail::frame_components(frenet, v);
  r.angle_samples = angle_function(frenet, axis, &r.tangential_angle);

  std::vector<double> tangent_defect(frenet.size()), normal_defect(frenet.size(), 1.0);
  for (std::size_t j = 0; j < frenet.size(); ++j) {
    const double vv = inner(*frenet.metric, frenet.points[j], v[j], v[j]);
    const auto& f = r.coeffs[j];
    tangent_defect[j] = 1.0 - f[0] * f[0] / vv;
    if (f.size() >= 2) normal_defect[j] = 1.0 - f[1] * f[1] / vv;
    if (static_cast<int>(f.size()) == frenet.dim) {
      double sum = 0.0;
      for (double x : f) sum += x * x;
      r.unit_decomposition_defect = std::max(r.unit_decomposition_defect, std::abs(sum - 1.0));
    }
  }
  if (frenet.frame_size < frenet.dim)
    r.diagnostics.push_back("Frenet frame does not span the tangent space; f_i cover only the "
                            "first " + std::to_string(frenet.frame_size) + " directions");

  const double max_kappa = max_abs(kappa_column(frenet, 1));
  if (max_abs(tangent_defect) < tol) {
    r.slant_case = SlantCase::tangent_parallel;
    r.parallel_defect = max_abs(tangent_defect);
    r.geodesic = frenet.order == 1 || max_kappa < tol;
    // N_2 ⟂ T ∥ V: the angle is π/2.
    r.cos_theta = 0.0;
    r.theta_hat = std::numbers::pi / 2.0;
    r.constancy_residual = detail::spread(r.angle_samples, detail::mean(r.angle_samples));
    r.is_slant_helix = r.geodesic;
    r.diagnostics.push_back(r.geodesic ? "axis is parallel to T and the curve is a geodesic"
                                       : "axis is parallel to T but the curve is not a geodesic");
    return r;
  }
  if (r.tangential_angle)
    throw PreconditionError("order-1 curve whose tangent is not parallel to the axis");

  r.cos_theta = detail::mean(r.angle_samples);
  r.theta_hat = std::acos(std::clamp(r.cos_theta, -1.0, 1.0));
  r.constancy_residual = detail::spread(r.angle_samples, r.cos_theta);
  r.is_slant_helix = r.constancy_residual < tol;

  if (max_abs(normal_defect) < tol) {
    r.slant_case = SlantCase::normal_parallel;
    r.parallel_defect = max_abs(normal_defect);
    for (std::size_t j = 0; j < frenet.size(); ++j)
      r.normal_case_residual = std::max(
          r.normal_case_residual, std::abs(r.rho[j] + r.cos_theta * frenet.kappa(j, 1)));
    if (frenet.order != 2)
      r.diagnostics.push_back("axis is parallel to N_2 but the Frenet order is " +
                              std::to_string(frenet.order) + ", not 2");
  }
  return r;
}

SystemCheck system_residuals_anti(const FrenetData& frenet, const SlantReport& report,
                                  double tol) {
  SystemCheck out;
  if (report.slant_case != SlantCase::generic) {
    out.notes.push_back("axis is parallel to " +
                        std::string(report.slant_case == SlantCase::tangent_parallel ? "T" : "N_2") +
                        "; the system applies only when it is parallel to no frame vector");
    return out;
  }
  const std::size_t n = static_cast<std::size_t>(frenet.frame_size);
  if (n < 2) throw PreconditionError("the anti-torqued system needs N_2");
  const int m = frenet.dim;
  const double h = uniform_spacing(frenet.s);
  const std::size_t size = frenet.size();
  const double c = report.cos_theta;

  std::vector<std::vector<double>> f(n + 2, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < n; ++i) f[i + 1] = column(report.coeffs, i);
  f[2].assign(size, c);
  std::vector<std::vector<double>> k(n + 1, std::vector<double>(size, 0.0));
  for (std::size_t i = 1; i < n; ++i) k[i] = kappa_column(frenet, static_cast<int>(i));
  const std::vector<double>& rho = report.rho;

  const bool three = m == 3 && n == 3;
  out.variant = three ? (std::abs(c) < tol ? "perpendicular" : "three_dim") : "general";
  out.applicable = true;

  auto push = [&](std::string name, const std::vector<double>& values, bool reduced) {
    out.lines.push_back({std::move(name), max_abs(values), tol, reduced});
  };

  std::vector<double> line(size);
  const std::vector<double> df1 = derivative(f[1], h);
  for (std::size_t j = 0; j < size; ++j)
    line[j] = df1[j] - c * k[1][j] - rho[j] * (1.0 - f[1][j] * f[1][j]);
  push(three ? (out.variant == "perpendicular" ? "T(f) - rho (1 - f^2)"
                                               : "T(f) - cos(theta) kappa - rho (1 - f^2)")
             : "N1: T(f1) - cos(theta) kappa1 - rho (1 - f1^2)",
       line, false);

  for (std::size_t j = 0; j < size; ++j)
    line[j] = k[1][j] * f[1][j] - k[2][j] * f[3][j] + c * rho[j] * f[1][j];
  push(three ? (out.variant == "perpendicular" ? "kappa f - tau g"
                                               : "kappa f - tau g + cos(theta) rho f")
             : "N2: kappa1 f1 - kappa2 f3 + cos(theta) rho f1",
       line, n < 3);

  for (std::size_t i = 3; i <= n; ++i) {
    const std::vector<double> dfi = derivative(f[i], h);
    for (std::size_t j = 0; j < size; ++j)
      line[j] = dfi[j] + k[i - 1][j] * f[i - 1][j] - (i < n ? k[i][j] * f[i + 1][j] : 0.0) +
                rho[j] * f[1][j] * f[i][j];
    std::string name;
    if (three)
      name = out.variant == "perpendicular" ? "T(g) + rho f g" : "T(g) + cos(theta) tau + rho f g";
    else if (i == 3)
      name = "N3: T(f3) + cos(theta) kappa2 - kappa3 f4 + rho f1 f3";
    else
      name = "N" + std::to_string(i) + ": T(f" + std::to_string(i) + ") + kappa" +
             std::to_string(i - 1) + " f" + std::to_string(i - 1) +
             (i < n ? " - kappa" + std::to_string(i) + " f" + std::to_string(i + 1) : "") +
             " + rho f1 f" + std::to_string(i);
    push(name, line, static_cast<int>(n) < m);
  }
  if (static_cast<int>(n) < m)
    out.notes.push_back("frame has " + std::to_string(n) + " of " + std::to_string(m) +
                        " vectors; lines past the frame are dropped");
  return out;
}

RatioLaw ratio_law_check(const FrenetData& frenet, const SlantReport& report, double tol) {
  if (std::abs(report.cos_theta) >= tol)
    throw PreconditionError("the ratio law requires cos θ = 0 (θ = π/2 or 3π/2)");
  if (frenet.order != 3 || frenet.dim != 3)
    throw PreconditionError("the ratio law requires a Frenet curve of order 3 in dimension 3");
  RatioLaw out;
  out.tol = tol;
  std::vector<double> q(frenet.size());
  for (std::size_t j = 0; j < frenet.size(); ++j) {
    const double f = report.coeffs[j][0];
    if (std::abs(f) < 1e-12)
      throw PreconditionError("tangential component f vanishes at s = " + std::to_string(frenet.s[j]));
    if (std::abs(f) >= 1.0)
      throw PreconditionError("|f| ≥ 1 at s = " + std::to_string(frenet.s[j]));
    q[j] = frenet.kappa(j, 2) / frenet.kappa(j, 1) * std::sqrt(1.0 - f * f) / f;
  }
  out.c_hat = detail::mean(q);
  out.residual = detail::spread(q, out.c_hat);
  return out;
}

EuclideanSlantReport classify_euclidean_slant(const FrenetData& frenet,
                                              const EuclideanSlantOptions& options) {
  if (frenet.size() == 0) throw InputError("empty Frenet data");
  if (frenet.dim != 3 || !frenet.metric->flat)
    throw PreconditionError("branch classification needs a Euclidean 3-dimensional chart");
  if (frenet.order < 2 || frenet.frame_size != 3)
    throw PreconditionError("branch classification needs a Frenet curve of order at least 2");
  if (frenet.size() < 9)
    throw PreconditionError("branch classification needs at least 9 interior samples");

  EuclideanSlantReport r;
  r.options = options;
  r.s = frenet.s;
  const double tol = options.tol, dtol = options.derivative_tol;
  const std::size_t n = frenet.size();
  const double h = uniform_spacing(frenet.s);

  std::vector<double> gamma_T(n), gamma_N(n), kappa = kappa_column(frenet, 1),
                                               tau = kappa_column(frenet, 2);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec& p = frenet.points[j];
    const double phi = p.norm();
    if (!(phi > 0.0))
      throw PreconditionError("the curve passes through the origin at s = " +
                              std::to_string(frenet.s[j]));
    gamma_T[j] = p.dot(frenet.frames[j][0]);
    gamma_N[j] = p.dot(frenet.frames[j][1]);
    r.phi.push_back(phi);
    r.dphi.push_back(gamma_T[j] / phi);
    r.cos_samples.push_back(gamma_N[j] / phi);
    r.g.push_back(p.dot(frenet.frames[j][2]));
  }
  const double c = r.cos_theta = detail::mean(r.cos_samples);
  r.constancy_residual = detail::spread(r.cos_samples, c);
  const bool slant = r.constancy_residual < tol;
  if (!slant)
    r.diagnostics.push_back("⟨γ, N⟩/|γ| is not constant within tolerance; not a slant helix "
                            "about the radial axis");

  // (a) circle centered at the origin in a plane through it.
  r.phi_spread = detail::spread(r.phi, detail::mean(r.phi));
  r.plane_defect = max_abs(r.g);
  r.cos_minus_one = 0.0;
  for (double x : r.cos_samples) r.cos_minus_one = std::max(r.cos_minus_one, std::abs(x + 1.0));
  if (r.phi_spread < tol && r.plane_defect < tol && r.cos_minus_one < tol)
    r.passing.push_back(EuclideanBranch::circle_origin);

  // (b) torsion-free with φ = ±sin θ s + c.
  r.max_abs_tau = max_abs(tau);
  r.min_abs_dphi = detail::min_abs(r.dphi);
  {
    const double sm = detail::mean(r.s), pm = detail::mean(r.phi);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sxx += (r.s[j] - sm) * (r.s[j] - sm);
      sxy += (r.s[j] - sm) * (r.phi[j] - pm);
    }
    r.slope = sxy / sxx;
    r.intercept = pm - r.slope * sm;
    for (std::size_t j = 0; j < n; ++j) {
      const double line = r.slope * r.s[j] + r.intercept;
      r.affine_fit_residual = std::max(r.affine_fit_residual, std::abs(r.phi[j] - line));
      r.kappa_law_residual = std::max(r.kappa_law_residual, std::abs(kappa[j] + c / line));
    }
    r.slope_defect = std::abs(std::abs(r.slope) - std::sqrt(std::max(0.0, 1.0 - c * c)));
  }
  if (slant && r.max_abs_tau < tol && r.min_abs_dphi > tol && r.affine_fit_residual < tol &&
      r.slope_defect < tol && r.kappa_law_residual < tol)
    r.passing.push_back(EuclideanBranch::log_spiral);

  // (c) rectifying.
  r.max_abs_gamma_N = max_abs(gamma_N);
  if (std::abs(c) < tol && r.max_abs_gamma_N < tol) r.passing.push_back(EuclideanBranch::rectifying);

  // (d) κ and τ laws, plus the three lines they come from.
  const std::vector<double> pp = derivative(gamma_T, h);  // (φφ')'
  std::vector<double> F(n, detail::nan);
  for (std::size_t j = 0; j < n; ++j) F[j] = (c * c + pp[j] - 1.0) * r.dphi[j];
  r.F = F;
  const std::vector<double> dF = derivative(F, h), dtau = derivative(tau, h), dg = derivative(r.g, h);
  std::vector<double> kappa_law(n, detail::nan), tau_law(n, detail::nan), l1(n), l2(n), l3(n);
  std::size_t skipped = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(c) >= tol) kappa_law[j] = kappa[j] - (pp[j] - 1.0) / (c * r.phi[j]);
    if (std::abs(F[j]) > 1e-10)
      tau_law[j] = dtau[j] - tau[j] * (dF[j] + c * c * r.phi[j] * tau[j] * tau[j]) / F[j];
    else if (!std::isnan(F[j]))
      ++skipped;
    l1[j] = pp[j] - c * r.phi[j] * kappa[j] - 1.0;
    l2[j] = (c + kappa[j] * r.phi[j]) * r.dphi[j] - r.g[j] * tau[j];
    l3[j] = dg[j] + c * r.phi[j] * tau[j];
  }
  if (skipped)
    r.diagnostics.push_back("τ law skipped at " + std::to_string(skipped) +
                            " samples where F vanishes");
  auto push = [&](std::string name, const std::vector<double>& v) {
    const double m = max_abs(v);
    r.generic_residuals.push_back({std::move(name), std::isnan(m) ? 0.0 : m, dtol, std::isnan(m)});
  };
  push("kappa - ((phi phi')' - 1)/(cos(theta) phi)", kappa_law);
  push("tau' - tau (F' + cos(theta)^2 phi tau^2)/F", tau_law);
  push("(phi phi')' - cos(theta) phi kappa - 1", l1);
  push("(cos(theta) + kappa phi) phi' - g tau", l2);
  push("g' + cos(theta) phi tau", l3);
  const bool laws = !std::isnan(max_abs(kappa_law)) && !std::isnan(max_abs(tau_law)) &&
                    max_abs(kappa_law) < dtol && max_abs(tau_law) < dtol;
  if (slant && std::abs(c) >= tol && detail::min_abs(tau) > tol && laws)
    r.passing.push_back(EuclideanBranch::generic);

  r.branch = r.passing.empty() ? EuclideanBranch::none : r.passing.front();
  return r;
}

}  // namespace torq
