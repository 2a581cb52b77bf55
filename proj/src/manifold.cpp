#include "torq/manifold.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "torq/error.hpp"

namespace torq {
namespace {

std::string format_point(const Vec& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

double param_or(std::span<const double> params, std::size_t i, double fallback) {
  return i < params.size() ? params[i] : fallback;
}

}  // namespace

bool ChartMetric::contains(const Vec& p) const {
  if (p.size() != dim) return false;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!std::isfinite(p[i])) return false;
  return !domain || domain(p);
}

Mat ChartMetric::at(const Vec& p) const {
  if (p.size() != dim)
    throw InputError("metric " + name + ": point dimension " + std::to_string(p.size()) +
                     " does not match chart dimension " + std::to_string(dim));
  if (!contains(p)) throw DomainError("metric " + name + ": point " + format_point(p) +
                                      " is outside the chart domain");
  return components(p);
}

std::vector<Mat> ChartMetric::derivatives(const Vec& p) const {
  if (!contains(p)) throw DomainError("metric " + name + ": point " + format_point(p) +
                                      " is outside the chart domain");
  if (partials) return partials(p);

  std::vector<Mat> d(dim);
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  for (int k = 0; k < dim; ++k) {
    const double h = base * std::max(1.0, std::abs(p[k]));
    Vec plus = p, minus = p;
    plus[k] += h;
    minus[k] -= h;
    if (!contains(plus) || !contains(minus))
      throw DomainError("metric " + name + ": finite-difference stencil at " +
                        format_point(p) + " leaves the chart domain");
    // Use the actually representable step.
    d[k] = (components(plus) - components(minus)) / (plus[k] - minus[k]);
  }
  return d;
}

std::vector<std::string> builtin_metric_names() {
  return {"euclidean", "punctured_euclidean", "hyperbolic_upper_half",
          "warped_interval_product"};
}

ChartMetric builtin_metric(std::string_view name, int dim, std::span<const double> params) {
  if (dim < 2) throw InputError("metric dimension must be at least 2, got " + std::to_string(dim));
  ChartMetric g;
  g.dim = dim;
  g.name = std::string(name);
  g.params.assign(params.begin(), params.end());

  if (name == "euclidean" || name == "punctured_euclidean") {
    g.flat = true;
    g.components = [dim](const Vec&) -> Mat { return Mat::Identity(dim, dim); };
    g.partials = [dim](const Vec&) { return std::vector<Mat>(dim, Mat::Zero(dim, dim)); };
    if (name == "punctured_euclidean")
      g.domain = [](const Vec& p) { return p.norm() > 0.0; };
    return g;
  }

  if (name == "hyperbolic_upper_half") {
    // (1/x_m²) Σ dx_i² on x_m > 0.
    const int last = dim - 1;
    g.components = [dim, last](const Vec& p) -> Mat {
      return Mat::Identity(dim, dim) / (p[last] * p[last]);
    };
    g.partials = [dim, last](const Vec& p) {
      std::vector<Mat> d(dim, Mat::Zero(dim, dim));
      d[last] = Mat::Identity(dim, dim) * (-2.0 / (p[last] * p[last] * p[last]));
      return d;
    };
    g.domain = [last](const Vec& p) { return p[last] > 0.0; };
    return g;
  }

  if (name == "warped_interval_product") {
    const double c0 = param_or(params, 0, 1.0);
    const double c1 = param_or(params, 1, 1.0);
    const double lo = param_or(params, 2, -10.0);
    const double hi = param_or(params, 3, 10.0);
    if (!(c0 > 0.0) || !(c1 > 0.0))
      throw InputError("warped_interval_product: warping coefficients must be positive");
    if (!(lo < hi)) throw InputError("warped_interval_product: empty interval");
    g.params = {c0, c1, lo, hi};
    g.components = [dim, c0, c1](const Vec& p) -> Mat {
      const double lambda = c0 * std::exp(c1 * p[0]);
      Mat m = Mat::Identity(dim, dim) * (lambda * lambda);
      m(0, 0) = 1.0;
      return m;
    };
    g.partials = [dim, c0, c1](const Vec& p) {
      const double lambda = c0 * std::exp(c1 * p[0]);
      std::vector<Mat> d(dim, Mat::Zero(dim, dim));
      d[0] = Mat::Identity(dim, dim) * (2.0 * c1 * lambda * lambda);
      d[0](0, 0) = 0.0;
      return d;
    };
    g.domain = [lo, hi](const Vec& p) { return p[0] > lo && p[0] < hi; };
    return g;
  }

  throw InputError("unknown metric '" + std::string(name) + "'");
}

Vec Christoffel::contract(const Vec& u, const Vec& w) const {
  Vec out = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k) {
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) acc += (*this)(k, i, j) * u[i] * w[j];
    out[k] = acc;
  }
  return out;
}

double Christoffel::asymmetry() const {
  double worst = 0.0;
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        worst = std::max(worst, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
  return worst;
}

Christoffel christoffel(const ChartMetric& metric, const ChartPoint& p) {
  const int m = metric.dim;
  Christoffel gamma(m);
  if (metric.flat) {
    if (!metric.contains(p)) metric.at(p);  // throws with context
    return gamma;
  }
  const Mat g = metric.at(p);
  Eigen::LDLT<Mat> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      std::abs(g.determinant()) < 1e-300)
    throw NumericalError("metric " + metric.name + " is singular at " + format_point(p));
  const Mat ginv = ldlt.solve(Mat::Identity(m, m));
  const std::vector<Mat> dg = metric.derivatives(p);

  // First kind: Γ_lij = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij).
  std::vector<double> first(m * m * m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        first[(l * m + i) * m + j] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));

  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int l = 0; l < m; ++l) acc += ginv(k, l) * first[(l * m + i) * m + j];
        gamma(k, i, j) = acc;
      }
  return gamma;
}

double inner(const ChartMetric& metric, const ChartPoint& p, const Vec& u, const Vec& v) {
  if (u.size() != metric.dim || v.size() != metric.dim)
    throw InputError("inner: vector dimension does not match chart dimension " +
                     std::to_string(metric.dim));
  return u.dot(metric.at(p) * v);
}

double norm(const ChartMetric& metric, const ChartPoint& p, const Vec& u) {
  return std::sqrt(std::max(0.0, inner(metric, p, u, u)));
}

Mat orthonormal_chart_frame(const ChartMetric& metric, const ChartPoint& p) {
  const int m = metric.dim;
  const Mat g = metric.at(p);
  Mat frame(m, m);
  for (int a = 0; a < m; ++a) {
    Vec w = Vec::Unit(m, a);
    for (int pass = 0; pass < 2; ++pass)
      for (int b = 0; b < a; ++b) w -= w.dot(g * frame.col(b)) * frame.col(b);
    const double n = std::sqrt(w.dot(g * w));
    if (!(n > 0.0)) throw NumericalError("degenerate chart frame at " + format_point(p));
    frame.col(a) = w / n;
  }
  return frame;
}

int orientation(const Mat& frame) { return frame.determinant() >= 0.0 ? 1 : -1; }

}  // namespace torq
