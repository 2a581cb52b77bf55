#include "torq/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "torq/error.hpp"

namespace torq {
namespace {

using Quadrature = boost::math::quadrature::gauss<double, 20>;

/// Floater-Hormann rational interpolant of blending degree d. Derivatives
/// are evaluated relative to the nearest node k through the divided
/// differences q_i = r[t, x_i], using Σ w_i q_i^(j) = 0 to eliminate the
/// q_k term, so no cancellation occurs as t approaches a node.
class FloaterHormann {
 public:
  static constexpr int max_order = 3;

  FloaterHormann(std::vector<double> x, std::vector<Vec> y, int d)
      : x_(std::move(x)), y_(std::move(y)), w_(x_.size(), 0.0) {
    const int n = static_cast<int>(x_.size()) - 1;
    for (int k = 0; k <= n; ++k) {
      double sum = 0.0;
      for (int i = std::max(0, k - d); i <= std::min(k, n - d); ++i) {
        double prod = 1.0;
        for (int j = i; j <= i + d; ++j)
          if (j != k) prod /= std::abs(x_[k] - x_[j]);
        sum += prod;
      }
      w_[k] = ((k + d) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
  }

  Vec operator()(double t, int order) const {
    const std::size_t n = x_.size();
    const auto it = std::lower_bound(x_.begin(), x_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - x_.begin());
    if (k == n || (k > 0 && t - x_[k - 1] < x_[k] - t)) --k;
    const double dk = t - x_[k];

    double b = 0.0;
    Vec num = Vec::Zero(y_[k].size());
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double c = w_[i] / (t - x_[i]);
      b += c;
      num += c * y_[i];
    }
    const double den = w_[k] + dk * b;
    Vec r = (w_[k] * y_[k] + dk * num) / den;
    if (order == 0) return r;

    std::vector<Vec> q(n);
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) q[i] = (r - y_[i]) / (t - x_[i]);
    for (int j = 1; j <= order; ++j) {
      Vec sum = Vec::Zero(r.size()), weighted = Vec::Zero(r.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        sum += w_[i] * q[i];
        weighted += w_[i] / (t - x_[i]) * q[i];
      }
      const Vec qk = -sum / w_[k];
      r = j * (w_[k] * qk + dk * weighted) / den;
      if (j < order)
        for (std::size_t i = 0; i < n; ++i)
          if (i != k) q[i] = (r - j * q[i]) / (t - x_[i]);
    }
    return r;
  }

 private:
  std::vector<double> x_;
  std::vector<Vec> y_;
  std::vector<double> w_;
};

void require_in_range(const CurveSamples& curve, double t) {
  if (!(t >= curve.lo() && t <= curve.hi())) {
    std::ostringstream os;
    os.precision(17);
    os << "curve parameter " << t << " is outside [" << curve.lo() << ", " << curve.hi()
       << "]";
    throw DomainError(os.str());
  }
}

double signed_integral(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  if (a < b) return Quadrature::integrate(f, a, b);
  return -Quadrature::integrate(f, b, a);
}

// Monotone map between the original parameter t and arc length s, with
// s = 0 at the first grid value.
class ArclengthMap {
 public:
  ArclengthMap(const CurveSamples& base, double t_begin, double t_end, std::size_t panels)
      : base_(base) {
    const double t0 = base.grid.front();
    knots_ = linspace(t_begin, t_end, panels + 1);
    // Make t0 a knot so s(t0) = 0 exactly.
    knots_.push_back(t0);
    std::sort(knots_.begin(), knots_.end());
    knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
    cumulative_.assign(knots_.size(), 0.0);
    const auto v = [this](double t) { return speed(base_, t); };
    for (std::size_t i = 1; i < knots_.size(); ++i)
      cumulative_[i] = cumulative_[i - 1] + signed_integral(v, knots_[i - 1], knots_[i]);
    const auto origin = std::lower_bound(knots_.begin(), knots_.end(), t0) - knots_.begin();
    const double shift = cumulative_[origin];
    for (double& c : cumulative_) c -= shift;
  }

  double s_of_t(double t) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    i = std::min(i, knots_.size() - 2);
    const auto v = [this](double u) { return speed(base_, u); };
    return cumulative_[i] + signed_integral(v, knots_[i], t);
  }

  double t_of_s(double s) const {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t i = it == cumulative_.begin() ? 0
                                              : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    i = std::min(i, knots_.size() - 2);
    const double frac = (s - cumulative_[i]) / (cumulative_[i + 1] - cumulative_[i]);
    double t = knots_[i] + frac * (knots_[i + 1] - knots_[i]);
    for (int iter = 0; iter < 60; ++iter) {
      const double step = (s_of_t(t) - s) / speed(base_, t);
      t -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    return t;
  }

  double length_between(double a, double b) const { return s_of_t(b) - s_of_t(a); }
  double s_min() const { return cumulative_.front(); }
  double s_max() const { return cumulative_.back(); }

 private:
  CurveSamples base_;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

}  // namespace

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = b;
  return out;
}

CurveSamples make_analytic_curve(std::shared_ptr<const ChartMetric> metric,
                                 AnalyticCurve curve, double a, double b, std::size_t n,
                                 bool arclength) {
  if (!metric) throw InputError("curve requires a metric");
  if (n < 2 || !(a < b)) throw InputError("curve grid needs at least two increasing samples");
  CurveSamples out;
  out.metric = std::move(metric);
  out.analytic = std::make_shared<const AnalyticCurve>(std::move(curve));
  out.grid = linspace(a, b, n);
  out.arclength = arclength;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_in_range(out, out.grid[i]);
    Vec p = out.analytic->eval(out.grid[i], 0);
    if (!out.metric->contains(p)) {
      std::ostringstream os;
      os.precision(17);
      os << "curve sample " << i << " (t = " << out.grid[i]
         << ") lies outside the domain of metric " << out.metric->name;
      throw DomainError(os.str());
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

CurveSamples make_sampled_curve(std::shared_ptr<const ChartMetric> metric,
                                std::vector<double> grid, std::vector<Vec> points) {
  if (!metric) throw InputError("curve requires a metric");
  if (grid.size() != points.size()) throw InputError("grid and point counts differ");
  if (grid.size() < 6) throw InputError("sampled curves need at least 6 samples");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw InputError("curve parameter must be strictly increasing (row " +
                       std::to_string(i) + ")");
  const int m = metric->dim;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != m)
      throw InputError("sample " + std::to_string(i) + " has wrong dimension");
    if (!metric->contains(points[i]))
      throw DomainError("curve sample " + std::to_string(i) +
                        " lies outside the domain of metric " + metric->name);
  }

  auto interp = std::make_shared<const FloaterHormann>(
      grid, points, static_cast<int>(std::min<std::size_t>(5, grid.size() - 1)));
  AnalyticCurve backend;
  backend.max_order = FloaterHormann::max_order;
  backend.lo = grid.front();
  backend.hi = grid.back();
  backend.eval = [interp](double t, int k) { return (*interp)(t, k); };

  CurveSamples out;
  out.metric = std::move(metric);
  out.grid = std::move(grid);
  out.points = std::move(points);
  out.analytic = std::make_shared<const AnalyticCurve>(std::move(backend));
  out.interpolated = true;
  return out;
}

Vec curve_derivative(const CurveSamples& curve, double t, int order, double h) {
  if (!curve.analytic) throw InputError("curve has no evaluator");
  if (order <= curve.analytic->max_order) {
    require_in_range(curve, t);
    return curve.analytic->eval(t, order);
  }
  return central_difference(
      [&](double u) { return curve_derivative(curve, u, order - 1, h); }, t, h);
}

double speed(const CurveSamples& curve, double t) {
  const Vec p = curve_derivative(curve, t, 0);
  const Vec v = curve_derivative(curve, t, 1);
  return norm(*curve.metric, p, v);
}

double curve_length(const CurveSamples& curve) {
  const auto v = [&](double t) { return speed(curve, t); };
  const auto knots = linspace(curve.grid.front(), curve.grid.back(),
                              std::max<std::size_t>(64, curve.size()));
  double total = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i)
    total += Quadrature::integrate(v, knots[i - 1], knots[i]);
  return total;
}

CurveSamples reparametrize_arclength(const CurveSamples& curve, std::size_t n_out) {
  if (!curve.analytic) throw InputError("curve has no evaluator");
  if (n_out < 2) throw InputError("reparametrization needs at least two output samples");

  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double v = speed(curve, curve.grid[i]);
    if (!(v > 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "curve is not regular: speed vanishes at sample " << i << " (t = " << curve.grid[i]
         << ")";
      throw PreconditionError(os.str());
    }
  }

  const double t0 = curve.grid.front();
  const double t1 = curve.grid.back();
  // Extend the table slightly past the grid when the evaluator allows, so
  // derivative stencils at the end samples stay inside the map.
  const double margin = 0.05 * (t1 - t0);
  const double t_begin = std::max(curve.lo(), t0 - margin);
  const double t_end = std::min(curve.hi(), t1 + margin);
  const std::size_t panels = std::max<std::size_t>(64, 2 * curve.size());
  auto map = std::make_shared<const ArclengthMap>(curve, t_begin, t_end, panels);

  const double length = map->s_of_t(t1);
  auto base = std::make_shared<const CurveSamples>(curve);

  AnalyticCurve unit;
  unit.max_order = 2;
  unit.lo = map->s_of_t(t_begin);
  unit.hi = map->s_of_t(t_end);
  unit.eval = [map, base](double s, int k) -> Vec {
    const double t = map->t_of_s(s);
    const Vec p = curve_derivative(*base, t, 0);
    if (k == 0) return p;
    const Vec d1 = curve_derivative(*base, t, 1);
    const Mat g = base->metric->at(p);
    const double v = std::sqrt(d1.dot(g * d1));
    if (k == 1) return d1 / v;
    const Vec d2 = curve_derivative(*base, t, 2);
    const std::vector<Mat> dg = base->metric->derivatives(p);
    double dgv = 0.0;
    for (int j = 0; j < d1.size(); ++j) dgv += d1[j] * d1.dot(dg[j] * d1);
    const double dv = (2.0 * d1.dot(g * d2) + dgv) / (2.0 * v);
    return (d2 - (dv / v) * d1) / (v * v);
  };

  CurveSamples out = make_analytic_curve(curve.metric, std::move(unit), 0.0, length, n_out, true);
  out.interpolated = curve.interpolated;
  return out;
}

Vec covariant_derivative_along(const ChartMetric& metric, const CurveSamples& curve,
                               const std::function<Vec(double)>& field, double s,
                               const std::function<Vec(double)>& field_derivative, double h) {
  const Vec p = curve_derivative(curve, s, 0);
  const Vec velocity = curve_derivative(curve, s, 1, h);
  const Vec w = field(s);
  const Vec dw = field_derivative ? field_derivative(s) : Vec(central_difference(field, s, h));
  return dw + christoffel(metric, p).contract(velocity, w);
}

Vec covariant_derivative_along(const ChartMetric& metric, const CurveSamples& curve,
                               std::span<const Vec> field_samples, double s,
                               bool one_sided_fallback) {
  const std::size_t n = curve.size();
  if (field_samples.size() != n) throw InputError("field sample count differs from curve");
  if (n < 5) throw PreconditionError("need at least 5 samples for the derivative stencil");
  const double h = (curve.grid.back() - curve.grid.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(curve.grid[i] - curve.grid[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw PreconditionError("sample-based derivative needs a uniform grid");

  const auto it = std::min_element(curve.grid.begin(), curve.grid.end(), [s](double a, double b) {
    return std::abs(a - s) < std::abs(b - s);
  });
  if (std::abs(*it - s) > 1e-9 * std::max(1.0, std::abs(h)))
    throw InputError("parameter is not a grid value");
  const std::size_t i = static_cast<std::size_t>(it - curve.grid.begin());

  Vec dw;
  if (i >= 2 && i + 2 < n) {
    dw = (field_samples[i - 2] - 8.0 * field_samples[i - 1] + 8.0 * field_samples[i + 1] -
          field_samples[i + 2]) /
         (12.0 * h);
  } else if (!one_sided_fallback) {
    throw PreconditionError("parameter at the grid boundary; central stencil does not fit");
  } else if (i < 2) {
    dw = (-25.0 * field_samples[i] + 48.0 * field_samples[i + 1] - 36.0 * field_samples[i + 2] +
          16.0 * field_samples[i + 3] - 3.0 * field_samples[i + 4]) /
         (12.0 * h);
  } else {
    dw = (25.0 * field_samples[i] - 48.0 * field_samples[i - 1] + 36.0 * field_samples[i - 2] -
          16.0 * field_samples[i - 3] + 3.0 * field_samples[i - 4]) /
         (12.0 * h);
  }
  const Vec& p = curve.points[i];
  const Vec velocity = curve_derivative(curve, curve.grid[i], 1);
  return dw + christoffel(metric, p).contract(velocity, field_samples[i]);
}

}  // namespace torq
