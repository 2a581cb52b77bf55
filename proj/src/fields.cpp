#include "torq/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "torq/error.hpp"

namespace torq {
namespace {

void require_metric(const ChartMetric& metric, std::string_view field,
                    std::initializer_list<std::string_view> allowed) {
  for (auto name : allowed)
    if (metric.name == name) return;
  std::string list;
  for (auto name : allowed) list += (list.empty() ? "" : ", ") + std::string(name);
  throw InputError("field " + std::string(field) + " is not defined on metric " + metric.name +
                   " (requires " + list + ")");
}

struct LocalFit {
  Vec value;
  Mat jacobian;
};

// Quadratic least squares of the samples nearest to p, centered at p.
LocalFit local_fit(const std::vector<Vec>& points, const std::vector<Vec>& vectors, const Vec& p) {
  const int m = static_cast<int>(p.size());
  const std::size_t quad_terms = static_cast<std::size_t>(1 + m + m * (m + 1) / 2);
  const bool quadratic = points.size() >= quad_terms + 2;
  const std::size_t terms = quadratic ? quad_terms : static_cast<std::size_t>(1 + m);
  if (points.size() < terms) throw InputError("too few field samples for a local fit");
  const std::size_t k = std::min(points.size(), 2 * terms);

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return (points[a] - p).squaredNorm() < (points[b] - p).squaredNorm();
                    });
  double radius = 0.0;
  for (std::size_t r = 0; r < k; ++r) radius = std::max(radius, (points[order[r]] - p).norm());
  if (!(radius > 0.0)) radius = 1.0;

  Mat A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(terms));
  Mat Y(static_cast<Eigen::Index>(k), m);
  for (std::size_t r = 0; r < k; ++r) {
    const Vec d = (points[order[r]] - p) / radius;
    Eigen::Index c = 0;
    A(r, c++) = 1.0;
    for (int i = 0; i < m; ++i) A(r, c++) = d[i];
    if (quadratic)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) A(r, c++) = d[i] * d[j];
    Y.row(r) = vectors[order[r]].transpose();
  }
  const Mat coeff = A.colPivHouseholderQr().solve(Y);
  LocalFit fit;
  fit.value = coeff.row(0).transpose();
  fit.jacobian = coeff.block(1, 0, m, m).transpose() / radius;
  return fit;
}

}  // namespace

Vec FieldSpec::at(const Vec& p) const {
  if (!metric->contains(p)) metric->at(p);  // throws with context
  return eval(p);
}

Mat FieldSpec::jacobian_at(const Vec& p) const {
  if (!metric->contains(p)) metric->at(p);
  if (jacobian) return jacobian(p);
  const int m = metric->dim;
  Mat J(m, m);
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  for (int j = 0; j < m; ++j) {
    const double h = base * std::max(1.0, std::abs(p[j]));
    Vec plus = p, minus = p;
    plus[j] += h;
    minus[j] -= h;
    if (!metric->contains(plus) || !metric->contains(minus))
      throw DomainError("field " + name + ": finite-difference stencil leaves the chart domain");
    J.col(j) = (eval(plus) - eval(minus)) / (plus[j] - minus[j]);
  }
  return J;
}

std::vector<std::string> builtin_field_names() {
  return {"radial_unit", "hyperbolic_em", "concircular_affine", "constant", "twisted_torqued"};
}

FieldSpec builtin_field(std::string_view name, std::shared_ptr<const ChartMetric> metric,
                        std::span<const double> params) {
  if (!metric) throw InputError("field requires a metric");
  const int m = metric->dim;
  FieldSpec f;
  f.metric = metric;
  f.name = std::string(name);
  f.params.assign(params.begin(), params.end());

  if (name == "radial_unit") {
    require_metric(*metric, name, {"punctured_euclidean"});
    f.eval = [](const Vec& p) -> Vec { return p / p.norm(); };
    f.jacobian = [m](const Vec& p) -> Mat {
      const double r = p.norm();
      const Vec u = p / r;
      return (Mat::Identity(m, m) - u * u.transpose()) / r;
    };
    return f;
  }
  if (name == "hyperbolic_em") {
    require_metric(*metric, name, {"hyperbolic_upper_half"});
    f.eval = [m](const Vec& p) -> Vec {
      Vec v = Vec::Zero(m);
      v[m - 1] = -p[m - 1];
      return v;
    };
    f.jacobian = [m](const Vec&) -> Mat {
      Mat J = Mat::Zero(m, m);
      J(m - 1, m - 1) = -1.0;
      return J;
    };
    return f;
  }
  if (name == "concircular_affine") {
    require_metric(*metric, name, {"euclidean", "punctured_euclidean"});
    const double rho = params.empty() ? 1.0 : params[0];
    Vec v = Vec::Zero(m);
    for (int i = 0; i < m && static_cast<std::size_t>(i + 1) < params.size(); ++i) v[i] = params[i + 1];
    f.params.assign(1, rho);
    for (int i = 0; i < m; ++i) f.params.push_back(v[i]);
    f.eval = [rho, v](const Vec& p) -> Vec { return rho * p + v; };
    f.jacobian = [rho, m](const Vec&) -> Mat { return rho * Mat::Identity(m, m); };
    return f;
  }
  if (name == "constant") {
    require_metric(*metric, name, {"euclidean", "punctured_euclidean"});
    Vec v = Vec::Zero(m);
    if (params.empty()) v[0] = 1.0;
    for (int i = 0; i < m && static_cast<std::size_t>(i) < params.size(); ++i) v[i] = params[i];
    if (v.norm() == 0.0) throw InputError("constant field must be nonzero");
    f.params.assign(v.data(), v.data() + m);
    f.eval = [v](const Vec&) -> Vec { return v; };
    f.jacobian = [m](const Vec&) -> Mat { return Mat::Zero(m, m); };
    return f;
  }
  if (name == "twisted_torqued") {
    require_metric(*metric, name, {"warped_interval_product"});
    const double c0 = metric->params.at(0);
    const double c1 = metric->params.at(1);
    Vec a = Vec::Zero(m - 1);
    if (params.empty()) a[0] = 1.0;
    for (int i = 0; i < m - 1 && static_cast<std::size_t>(i) < params.size(); ++i) a[i] = params[i];
    f.params.assign(a.data(), a.data() + (m - 1));
    auto lambda_mu = [c0, c1, a](const Vec& p) {
      return c0 * std::exp(c1 * p[0]) * std::exp(a.dot(p.tail(p.size() - 1)));
    };
    f.eval = [m, lambda_mu](const Vec& p) -> Vec {
      Vec v = Vec::Zero(m);
      v[0] = lambda_mu(p);
      return v;
    };
    f.jacobian = [m, c1, a, lambda_mu](const Vec& p) -> Mat {
      Mat J = Mat::Zero(m, m);
      const double lm = lambda_mu(p);
      J(0, 0) = c1 * lm;
      for (int i = 1; i < m; ++i) J(0, i) = a[i - 1] * lm;
      return J;
    };
    return f;
  }
  throw InputError("unknown field '" + std::string(name) + "'");
}

FieldSpec field_from_samples(std::shared_ptr<const ChartMetric> metric, std::vector<Vec> points,
                             std::vector<Vec> vectors) {
  if (!metric) throw InputError("field requires a metric");
  if (points.size() != vectors.size()) throw InputError("point and vector counts differ");
  if (points.empty()) throw InputError("field sample file is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != metric->dim || vectors[i].size() != metric->dim)
      throw InputError("field sample " + std::to_string(i) + " has wrong dimension");
    if (!metric->contains(points[i]))
      throw DomainError("field sample " + std::to_string(i) + " lies outside the chart domain");
  }
  auto pts = std::make_shared<const std::vector<Vec>>(std::move(points));
  auto vals = std::make_shared<const std::vector<Vec>>(std::move(vectors));
  FieldSpec f;
  f.metric = std::move(metric);
  f.name = "samples";
  f.eval = [pts, vals](const Vec& p) -> Vec {
    for (std::size_t i = 0; i < pts->size(); ++i)
      if (((*pts)[i] - p).norm() <= 1e-14 * std::max(1.0, p.norm())) return (*vals)[i];
    return local_fit(*pts, *vals, p).value;
  };
  f.jacobian = [pts, vals](const Vec& p) -> Mat { return local_fit(*pts, *vals, p).jacobian; };
  f.approximate_jacobian = true;
  return f;
}

Vec covariant_derivative(const FieldSpec& field, const Vec& p, const Vec& x) {
  const Vec v = field.at(p);
  return field.jacobian_at(p) * x + christoffel(*field.metric, p).contract(x, v);
}

TorseFormingFit torse_forming_fit(const FieldSpec& field, const Vec& p) {
  const ChartMetric& metric = *field.metric;
  const int m = metric.dim;
  const Mat g = metric.at(p);
  const Vec v = field.at(p);
  const double vnorm = std::sqrt(std::max(0.0, v.dot(g * v)));
  if (!(vnorm > 0.0)) throw PreconditionError("torse-forming fit: field vanishes at the point");

  const Mat frame = orthonormal_chart_frame(metric, p);
  const Mat J = field.jacobian_at(p);
  const Christoffel gamma = christoffel(metric, p);
  const Vec v_frame = frame.transpose() * g * v;  // ⟨V, e_b⟩

  // Unknowns (ρ, ω(e_1), ..., ω(e_m)); one row per frame component b of
  // ∇_{e_a} V for each direction a.
  Mat A = Mat::Zero(m * m, m + 1);
  Vec y(m * m);
  for (int a = 0; a < m; ++a) {
    const Vec x = frame.col(a);
    const Vec dv = J * x + gamma.contract(x, v);
    const Vec dv_frame = frame.transpose() * g * dv;
    for (int b = 0; b < m; ++b) {
      const int row = a * m + b;
      y[row] = dv_frame[b];
      A(row, 0) = a == b ? 1.0 : 0.0;
      A(row, 1 + a) = v_frame[b];
    }
  }
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv[sv.size() - 1] > 1e-12 * sv[0]))
    throw NumericalError("torse-forming fit: rank-deficient least-squares system");
  const Vec x = svd.solve(y);

  TorseFormingFit fit;
  fit.rho = x[0];
  const Vec omega_frame = x.tail(m);
  fit.W = frame * omega_frame;
  fit.omega = g * fit.W;
  fit.residual = (A * x - y).norm();
  return fit;
}

std::string to_string(FieldClass c) {
  switch (c) {
    case FieldClass::concircular: return "concircular";
    case FieldClass::recurrent: return "recurrent";
    case FieldClass::torqued: return "torqued";
    case FieldClass::anti_torqued: return "anti_torqued";
    case FieldClass::torse_forming_general: return "torse_forming_general";
    case FieldClass::not_torse_forming: return "not_torse_forming";
  }
  return "unknown";
}

double default_field_tolerance(const FieldSpec& field) {
  return field.has_analytic_jacobian() ? 1e-6 : 1e-3;
}

TorseFormingReport classify_field(const FieldSpec& field, std::span<const Vec> points, double tol,
                                  ExecPolicy policy) {
  if (points.empty()) throw InputError("classification needs at least one sample point");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const ChartMetric& metric = *field.metric;
  const std::size_t n = points.size();

  TorseFormingReport r;
  r.tol = tol;
  r.points.assign(points.begin(), points.end());
  r.rho.resize(n);
  r.omega.resize(n);
  r.W.resize(n);
  r.residual.resize(n);
  std::vector<double> omega_norm(n), vw(n), anti(n);

  for_each_index(n, policy, [&](std::size_t i) {
    const Vec& p = points[i];
    TorseFormingFit fit;
    try {
      fit = torse_forming_fit(field, p);
    } catch (const Error& e) {
      std::ostringstream os;
      os.precision(17);
      os << "sample point " << i << " (" << p.transpose() << "): " << e.what();
      throw PreconditionError(os.str());
    }
    const Vec v = field.at(p);
    r.rho[i] = fit.rho;
    r.omega[i] = fit.omega;
    r.W[i] = fit.W;
    r.residual[i] = fit.residual;
    omega_norm[i] = norm(metric, p, fit.W);
    vw[i] = std::abs(inner(metric, p, v, fit.W));
    anti[i] = norm(metric, p, fit.W + fit.rho * v);
  });

  const auto max_of = [](const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
  };
  const auto min_of = [](const std::vector<double>& xs) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::min(m, std::abs(x));
    return m;
  };
  r.max_residual = max_of(r.residual);
  r.max_abs_rho = max_of(r.rho);
  r.max_omega_norm = max_of(omega_norm);
  r.max_abs_VW = max_of(vw);
  r.max_anti_defect = max_of(anti);
  r.proper = min_of(r.rho) > tol && min_of(omega_norm) > tol;

  if (r.max_residual >= tol) {
    r.label = FieldClass::not_torse_forming;
    return r;
  }
  if (r.max_anti_defect < tol) r.passing.push_back(FieldClass::anti_torqued);
  if (r.max_abs_VW < tol) r.passing.push_back(FieldClass::torqued);
  if (r.max_omega_norm < tol) r.passing.push_back(FieldClass::concircular);
  if (r.max_abs_rho < tol) r.passing.push_back(FieldClass::recurrent);
  r.passing.push_back(FieldClass::torse_forming_general);

  if (r.max_anti_defect < tol && r.max_abs_rho >= tol)
    r.label = FieldClass::anti_torqued;
  else if (r.max_abs_VW < tol && r.max_omega_norm >= tol)
    r.label = FieldClass::torqued;
  else if (r.max_omega_norm < tol)
    r.label = FieldClass::concircular;
  else if (r.max_abs_rho < tol)
    r.label = FieldClass::recurrent;
  else
    r.label = FieldClass::torse_forming_general;
  return r;
}

std::pair<double, double> unit_geodesic_defect(const FieldSpec& field, const Vec& p) {
  const Vec v = field.at(p);
  const double unit = std::abs(inner(*field.metric, p, v, v) - 1.0);
  const double geodesic = norm(*field.metric, p, covariant_derivative(field, p, v));
  return {unit, geodesic};
}

}  // namespace torq
