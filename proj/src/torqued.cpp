#include "torq/torqued.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "along.hpp"
#include "torq/error.hpp"

namespace torq {

using detail::column;
using detail::derivative;
using detail::kappa_column;
using detail::max_abs;

std::string to_string(TorquedCase c) {
  switch (c) {
    case TorquedCase::tangent_parallel: return "a";
    case TorquedCase::normal_parallel: return "b";
    case TorquedCase::generic: return "c";
  }
  return "unknown";
}

TorquedReport torqued_report(const FrenetData& frenet, const FieldSpec& field, double tol,
                             ExecPolicy policy) {
  if (frenet.size() == 0) throw InputError("empty Frenet data");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  TorquedReport r;
  r.tol = tol;
  r.s = frenet.s;
  const ChartMetric& metric = *frenet.metric;
  const std::size_t n = frenet.size();

  const std::vector<Vec> v = detail::field_along(frenet, field, policy);
  const double field_tol = default_field_tolerance(field);
  const TorseFormingReport fit = classify_field(field, frenet.points, field_tol, policy);
  r.field_label = fit.label;
  r.rho = fit.rho;
  r.concircular = fit.max_omega_norm < field_tol;
  if (fit.label == FieldClass::not_torse_forming)
    throw PreconditionError("field is not torse-forming along the curve (fit residual " +
                            std::to_string(fit.max_residual) + ")");
  if (fit.label != FieldClass::torqued && fit.label != FieldClass::concircular)
    r.diagnostics.push_back("field is classified " + to_string(fit.label) +
                            ", not torqued or concircular");

  r.f = detail::frame_components(frenet, v);
  r.g = detail::frame_components(frenet, fit.W);

  std::vector<double> tangent_defect(n), normal_defect(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec& p = frenet.points[j];
    const double vv = inner(metric, p, v[j], v[j]);
    tangent_defect[j] = 1.0 - r.f[j][0] * r.f[j][0] / vv;
    if (r.f[j].size() >= 2) normal_defect[j] = 1.0 - r.f[j][1] * r.f[j][1] / vv;
    Vec rv = v[j], rw = fit.W[j];
    double fg = 0.0;
    for (std::size_t i = 0; i < r.f[j].size(); ++i) {
      rv -= r.f[j][i] * frenet.frames[j][i];
      rw -= r.g[j][i] * frenet.frames[j][i];
      fg += r.f[j][i] * r.g[j][i];
    }
    r.v_decomposition_defect = std::max(r.v_decomposition_defect, norm(metric, p, rv));
    r.w_decomposition_defect = std::max(r.w_decomposition_defect, norm(metric, p, rw));
    r.orthogonality_residual = std::max(r.orthogonality_residual, std::abs(fg));
  }

  const std::size_t index = frenet.frame_size >= 2 ? 1 : 0;
  r.theta_samples = column(r.f, index);

  if (max_abs(tangent_defect) < tol) {
    r.torqued_case = TorquedCase::tangent_parallel;
    r.geodesic = frenet.order == 1 || max_abs(kappa_column(frenet, 1)) < tol;
    r.theta_hat = 0.0;
    r.theta_samples = index == 1 ? column(r.f, 1) : std::vector<double>(n, 0.0);
    r.constancy_residual = max_abs(r.theta_samples);
    r.is_torqued_curve = r.constancy_residual < tol;
    if (!r.geodesic) r.diagnostics.push_back("field is parallel to T but the curve is not a geodesic");
    return r;
  }
  if (index == 0) throw PreconditionError("order-1 curve whose tangent is not parallel to the field");

  r.theta_hat = detail::mean(r.theta_samples);
  r.constancy_residual = detail::spread(r.theta_samples, r.theta_hat);
  r.is_torqued_curve = r.constancy_residual < tol;

  if (max_abs(normal_defect) < tol) {
    r.torqued_case = TorquedCase::normal_parallel;
    for (std::size_t j = 0; j < n; ++j)
      r.normal_case_residual = std::max(
          r.normal_case_residual, std::abs(frenet.kappa(j, 1) * r.f[j][1] + r.rho[j]));
    r.max_abs_kappa2 = max_abs(kappa_column(frenet, 2));
  }
  return r;
}

SystemCheck system_residuals_torqued(const FrenetData& frenet, const TorquedReport& report,
                                     double tol, bool varying_theta) {
  if (report.torqued_case == TorquedCase::tangent_parallel)
    throw PreconditionError("case (a): the field is parallel to T and the system does not apply");
  const std::size_t n = static_cast<std::size_t>(frenet.frame_size);
  if (n < 2) throw PreconditionError("the torqued system needs N_2");
  const int m = frenet.dim;
  const std::size_t size = frenet.size();
  const double h = uniform_spacing(frenet.s);

  SystemCheck out;
  out.applicable = true;
  const bool conc = report.concircular && !varying_theta;
  const bool three = m == 3 && n == 3;
  out.variant = varying_theta ? "identity" : conc ? "concircular" : three ? "three_dim" : "general";
  if (report.torqued_case == TorquedCase::normal_parallel)
    out.notes.push_back("case (b): the field is parallel to N_2; lines are evaluated as is");

  // f[i], g[i] 1-based; f[2] is θ unless varying_theta.
  std::vector<std::vector<double>> f(n + 2, std::vector<double>(size, 0.0)), g = f;
  for (std::size_t i = 0; i < n; ++i) {
    f[i + 1] = column(report.f, i);
    g[i + 1] = column(report.g, i);
  }
  if (!varying_theta) f[2].assign(size, report.theta_hat);
  std::vector<std::vector<double>> k(n + 1, std::vector<double>(size, 0.0));
  for (std::size_t i = 1; i < n; ++i) k[i] = kappa_column(frenet, static_cast<int>(i));
  const std::vector<double>& rho = report.rho;

  auto push = [&](std::string name, const std::vector<double>& values, bool reduced) {
    out.lines.push_back({std::move(name), max_abs(values), tol, reduced});
  };
  std::vector<double> line(size);

  const std::vector<double> df1 = derivative(f[1], h);
  for (std::size_t j = 0; j < size; ++j)
    line[j] = df1[j] - f[2][j] * k[1][j] - rho[j] - f[1][j] * g[1][j];
  push(conc ? (three ? "T(f1) - theta kappa - rho" : "N1: T(f1) - theta kappa1 - rho")
       : three ? "T(f1) - theta kappa - rho - f1 g1"
               : "N1: T(f1) - theta kappa1 - rho - f1 g1",
       line, false);

  const std::vector<double> df2 = derivative(f[2], h);
  for (std::size_t j = 0; j < size; ++j)
    line[j] = (varying_theta ? df2[j] : 0.0) + k[1][j] * f[1][j] - k[2][j] * f[3][j] -
              f[2][j] * g[1][j];
  push(conc ? (three ? "kappa f1 - tau f3" : "N2: kappa1 f1 - kappa2 f3")
       : varying_theta ? "N2: T(f2) + kappa1 f1 - kappa2 f3 - f2 g1"
       : three         ? "kappa f1 - tau f3 - theta g1"
                       : "N2: kappa1 f1 - kappa2 f3 - theta g1",
       line, n < 3);

  for (std::size_t i = 3; i <= n; ++i) {
    const std::vector<double> dfi = derivative(f[i], h);
    for (std::size_t j = 0; j < size; ++j)
      line[j] = dfi[j] + k[i - 1][j] * f[i - 1][j] - (i < n ? k[i][j] * f[i + 1][j] : 0.0) -
                f[i][j] * g[1][j];
    std::string name;
    if (three)
      name = conc ? "T(f3) + theta tau" : "T(f3) + theta tau - f3 g1";
    else {
      const std::string si = std::to_string(i), sp = std::to_string(i - 1);
      name = "N" + si + ": T(f" + si + ") + " + (i == 3 ? "theta kappa2" : "kappa" + sp + " f" + sp) +
             (i < n ? " - kappa" + si + " f" + std::to_string(i + 1) : "") +
             (conc ? "" : " - f" + si + " g1");
    }
    push(name, line, static_cast<int>(n) < m);
  }

  if (!conc) {
    for (std::size_t j = 0; j < size; ++j) {
      line[j] = 0.0;
      for (std::size_t i = 1; i <= n; ++i) line[j] += f[i][j] * g[i][j];
    }
    push(three ? "f1 g1 + theta g2 + f3 g3" : "f1 g1 + theta g2 + sum_i fi gi", line,
         static_cast<int>(n) < m);
  }
  if (static_cast<int>(n) < m)
    out.notes.push_back("frame has " + std::to_string(n) + " of " + std::to_string(m) +
                        " vectors; lines past the frame are dropped");
  return out;
}

double concircular_ode_residual(const FrenetData& frenet, std::span<const double> rho,
                                double theta) {
  if (frenet.order < 3)
    throw PreconditionError("the concircular ODE needs a Frenet curve of order 3");
  if (rho.size() != frenet.size()) throw InputError("one ρ sample per Frenet sample is required");
  const std::size_t n = frenet.size();
  const double h = uniform_spacing(frenet.s);
  std::vector<double> kappa = kappa_column(frenet, 1), phi(n);
  for (std::size_t j = 0; j < n; ++j) phi[j] = frenet.kappa(j, 2) / kappa[j];
  const std::vector<double> dphi = derivative(phi, h);

  std::vector<double> q1(n, detail::nan), q2(n, detail::nan);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(dphi[j])) continue;
    if (std::abs(dphi[j]) < 1e-8) {
      std::ostringstream os;
      os.precision(17);
      os << "T(φ) vanishes at s = " << frenet.s[j] << " (|T(φ)| = " << std::abs(dphi[j])
         << "); the concircular ODE requires T(φ) ≠ 0";
      throw PreconditionError(os.str());
    }
    q1[j] = kappa[j] * (1.0 + phi[j] * phi[j]) / dphi[j];
    q2[j] = rho[j] / dphi[j];
  }
  const std::vector<double> d1 = derivative(q1, h), d2 = derivative(q2, h);
  std::vector<double> res(n);
  for (std::size_t j = 0; j < n; ++j) res[j] = theta * d1[j] + d2[j] + theta * kappa[j] * phi[j];
  const double m = max_abs(res);
  if (std::isnan(m)) throw PreconditionError("too few samples for the nested differences");
  return m;
}

}  // namespace torq
