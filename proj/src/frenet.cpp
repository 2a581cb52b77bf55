#include "torq/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "torq/error.hpp"

namespace torq {
namespace {

Vec completion_vector(const std::vector<Vec>& frame, const Mat& g) {
  const int m = static_cast<int>(g.rows());
  Vec best;
  double best_norm = -1.0;
  for (int a = 0; a < m; ++a) {
    Vec w = Vec::Unit(m, a);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& n : frame) w -= w.dot(g * n) * n;
    const double r = std::sqrt(std::max(0.0, w.dot(g * w)));
    if (r > best_norm) {
      best_norm = r;
      best = w / r;
    }
  }
  return best;
}

Mat as_matrix(const std::vector<Vec>& frame) {
  Mat out(frame.front().size(), static_cast<Eigen::Index>(frame.size()));
  for (std::size_t j = 0; j < frame.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = frame[j];
  return out;
}

double speed_tolerance(const CurveSamples& curve, const FrenetOptions& options) {
  if (options.unit_speed_tol > 0.0) return options.unit_speed_tol;
  return curve.interpolated ? 1e-4 : 1e-6;
}

}  // namespace

double FrenetData::kappa(std::size_t j, int i) const {
  const auto& c = curvatures[j];
  return i >= 1 && static_cast<std::size_t>(i) <= c.size() ? c[i - 1] : 0.0;
}

Vec iterated_tangent_derivative(const CurveSamples& curve, double s, int k, double h) {
  if (k == 0 || curve.metric->flat) return curve_derivative(curve, s, k + 1, h);
  const Vec p = curve_derivative(curve, s, 0);
  const Vec v = curve_derivative(curve, s, 1, h);
  const Christoffel gamma = christoffel(*curve.metric, p);
  if (k == 1) return curve_derivative(curve, s, 2, h) + gamma.contract(v, v);
  const Vec previous = iterated_tangent_derivative(curve, s, k - 1, h);
  const Vec d = central_difference(
      [&](double u) { return iterated_tangent_derivative(curve, u, k - 1, h); }, s, h);
  return d + gamma.contract(v, previous);
}

FrameSample frame_at(const CurveSamples& curve, double s, const FrenetOptions& options) {
  const ChartMetric& metric = *curve.metric;
  const int m = metric.dim;
  const double h = options.fd_step;

  FrameSample out;
  out.point = curve_derivative(curve, s, 0);
  const Mat g = metric.at(out.point);

  std::vector<double> diag;
  out.order = m;
  for (int k = 0; k < m; ++k) {
    const Vec v = iterated_tangent_derivative(curve, s, k, h);
    Vec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& n : out.frame) w -= w.dot(g * n) * n;
    const double r = std::sqrt(std::max(0.0, w.dot(g * w)));
    const double scale = std::max(1.0, std::sqrt(std::max(0.0, v.dot(g * v))));
    if (!(r >= options.rank_tol * scale)) {
      out.order = k;
      break;
    }
    out.frame.push_back(w / r);
    diag.push_back(r);
  }
  if (out.order == 0) throw PreconditionError("curve is not regular at the requested sample");

  for (int k = 1; k < out.order; ++k) out.curvatures.push_back(diag[k] / diag[k - 1]);

  if (out.order == m) {
    if (orientation(as_matrix(out.frame)) < 0) {
      out.frame.back() = -out.frame.back();
      out.curvatures.back() = -out.curvatures.back();
    }
  } else if (out.order == m - 1) {
    Vec last = completion_vector(out.frame, g);
    out.frame.push_back(last);
    if (orientation(as_matrix(out.frame)) < 0) out.frame.back() = -out.frame.back();
    out.curvatures.push_back(0.0);
  }
  return out;
}

FrenetData frenet_apparatus(const CurveSamples& curve, const FrenetOptions& options) {
  if (!curve.arclength)
    throw PreconditionError("Frenet data requires an arc-length parametrized curve");
  if (!curve.analytic) throw InputError("curve has no evaluator");
  const std::size_t n = curve.size();
  const double speed_tol = speed_tolerance(curve, options);

  std::vector<std::optional<FrameSample>> samples(n);
  std::vector<std::string> domain_errors(n);
  for_each_index(n, options.policy, [&](std::size_t i) {
    const double s = curve.grid[i];
    try {
      FrameSample f = frame_at(curve, s, options);
      const double v = norm(*curve.metric, f.point, curve_derivative(curve, s, 1));
      if (std::abs(v - 1.0) > speed_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "curve is not unit speed at sample " << i << " (s = " << s << ", |γ'| = " << v
           << ")";
        throw PreconditionError(os.str());
      }
      samples[i] = std::move(f);
    } catch (const DomainError& e) {
      domain_errors[i] = e.what();
    }
  });

  // Samples whose stencil leaves the curve interval may only sit at the ends.
  std::size_t first = 0, last = n;
  while (first < n && !samples[first]) ++first;
  while (last > first && !samples[last - 1]) --last;
  for (std::size_t i = first; i < last; ++i)
    if (!samples[i]) throw DomainError("sample " + std::to_string(i) + ": " + domain_errors[i]);
  if (first >= last) throw PreconditionError("no sample admits the derivative stencil");

  FrenetData out;
  out.metric = curve.metric;
  out.dim = curve.dim();
  out.order = samples[first]->order;
  out.frame_size = static_cast<int>(samples[first]->frame.size());
  for (std::size_t i = first; i < last; ++i) {
    FrameSample& f = *samples[i];
    if (f.order != out.order) {
      std::ostringstream os;
      os.precision(17);
      os << "Frenet order changes from " << out.order << " to " << f.order
         << " between s = " << curve.grid[i - 1] << " and s = " << curve.grid[i]
         << " (curve not in constant general position)";
      throw PreconditionError(os.str());
    }
    out.index.push_back(i);
    out.s.push_back(curve.grid[i]);
    out.points.push_back(std::move(f.point));
    out.frames.push_back(std::move(f.frame));
    out.curvatures.push_back(std::move(f.curvatures));
  }
  return out;
}

double frenet_formula_residual(const CurveSamples& curve, double s, const FrenetOptions& options) {
  const double h = options.fd_step;
  const FrameSample center = frame_at(curve, s, options);
  const Christoffel gamma = christoffel(*curve.metric, center.point);
  const std::size_t size = center.frame.size();
  std::vector<FrameSample> stencil;
  for (double offset : {-2.0, -1.0, 1.0, 2.0}) {
    stencil.push_back(frame_at(curve, s + offset * h, options));
    if (stencil.back().frame.size() != size)
      throw PreconditionError("frame size changes inside the derivative stencil");
  }
  const Vec& tangent = center.frame[0];
  double worst = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const Vec dn = (stencil[0].frame[i] - 8.0 * stencil[1].frame[i] + 8.0 * stencil[2].frame[i] -
                    stencil[3].frame[i]) /
                   (12.0 * h);
    const Vec covariant = dn + gamma.contract(tangent, center.frame[i]);
    Vec expected = Vec::Zero(tangent.size());
    if (i > 0) expected -= center.curvatures[i - 1] * center.frame[i - 1];
    if (i + 1 < size) expected += center.curvatures[i] * center.frame[i + 1];
    worst = std::max(worst, norm(*curve.metric, center.point, covariant - expected));
  }
  return worst;
}

double frame_orthonormality_defect(const FrenetData& frenet) {
  double worst = 0.0;
  for (std::size_t j = 0; j < frenet.size(); ++j) {
    const Mat g = frenet.metric->at(frenet.points[j]);
    const auto& f = frenet.frames[j];
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = 0; b < f.size(); ++b)
        worst = std::max(worst, std::abs(f[a].dot(g * f[b]) - (a == b ? 1.0 : 0.0)));
  }
  return worst;
}

double uniform_spacing(const std::vector<double>& grid) {
  if (grid.size() < 2) throw PreconditionError("grid needs at least two samples");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw PreconditionError("grid is not uniform");
  return h;
}

SpecialCurve detect_special(const FrenetData& frenet, double tol) {
  if (frenet.size() == 0) throw InputError("empty Frenet data");
  SpecialCurve out;
  const std::size_t n = frenet.size();

  for (std::size_t j = 0; j < n; ++j)
    out.max_kappa1 = std::max(out.max_kappa1, std::abs(frenet.kappa(j, 1)));
  out.geodesic = frenet.order == 1 || out.max_kappa1 < tol;

  if (frenet.order == 2 && n >= 5) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += frenet.kappa(j, 1);
    mean /= static_cast<double>(n);
    double spread = 0.0;
    for (std::size_t j = 0; j < n; ++j) spread = std::max(spread, std::abs(frenet.kappa(j, 1) - mean));

    // ∇_T N_2 + R T on interior samples.
    const double h = uniform_spacing(frenet.s);
    std::vector<Vec> normals(n);
    for (std::size_t j = 0; j < n; ++j) normals[j] = frenet.frames[j][1];
    double residual = 0.0;
    for (std::size_t j = 2; j + 2 < n; ++j) {
      const Vec dn = grid_derivative(normals, j, h);
      const Vec& t = frenet.frames[j][0];
      const Vec cov = dn + christoffel(*frenet.metric, frenet.points[j]).contract(t, normals[j]);
      residual = std::max(residual, norm(*frenet.metric, frenet.points[j], cov + mean * t));
    }
    out.circle_R = mean;
    out.circle_radius = mean != 0.0 ? 1.0 / mean : 0.0;
    out.circle_residual = std::max(spread, residual);
    out.circle = mean > tol && out.circle_residual < tol;
  }

  if (frenet.order == 3 && frenet.dim == 3) {
    std::vector<double> ratio(n);
    for (std::size_t j = 0; j < n; ++j) ratio[j] = frenet.kappa(j, 2) / frenet.kappa(j, 1);
    const double mean = std::accumulate(ratio.begin(), ratio.end(), 0.0) / static_cast<double>(n);
    double spread = 0.0;
    for (double r : ratio) spread = std::max(spread, std::abs(r - mean));
    out.helix_ratio = mean;
    out.helix_ratio_spread = spread;
    out.general_helix = spread < tol;
  }
  return out;
}

}  // namespace torq
