#pragma once

// Helpers for quantities sampled on a Frenet grid.

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "torq/fields.hpp"
#include "torq/frenet.hpp"

namespace torq::detail {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Five-point arc-length derivative; NaN where the stencil does not fit or
// touches a NaN, so nested derivatives shrink the valid range naturally.
inline std::vector<double> derivative(const std::vector<double>& v, double h) {
  std::vector<double> d(v.size(), nan);
  for (std::size_t j = 2; j + 2 < v.size(); ++j) d[j] = grid_derivative(v, j, h);
  return d;
}

// Max |x| over the non-NaN entries; NaN when there are none.
inline double max_abs(const std::vector<double>& v) {
  double m = nan;
  for (double x : v)
    if (!std::isnan(x)) m = std::isnan(m) ? std::abs(x) : std::max(m, std::abs(x));
  return m;
}

inline double min_abs(const std::vector<double>& v) {
  double m = nan;
  for (double x : v)
    if (!std::isnan(x)) m = std::isnan(m) ? std::abs(x) : std::min(m, std::abs(x));
  return m;
}

inline double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double spread(const std::vector<double>& v, double center) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - center));
  return m;
}

inline std::vector<Vec> field_along(const FrenetData& frenet, const FieldSpec& field,
                                    ExecPolicy policy) {
  std::vector<Vec> out(frenet.size());
  for_each_index(frenet.size(), policy, [&](std::size_t j) { out[j] = field.at(frenet.points[j]); });
  return out;
}

// c[j][i] = ⟨x_j, N_{i+1}⟩ at sample j.
inline std::vector<std::vector<double>> frame_components(const FrenetData& frenet,
                                                         const std::vector<Vec>& x) {
  std::vector<std::vector<double>> c(frenet.size());
  for (std::size_t j = 0; j < frenet.size(); ++j) {
    const Mat g = frenet.metric->at(frenet.points[j]);
    for (const Vec& n : frenet.frames[j]) c[j].push_back(x[j].dot(g * n));
  }
  return c;
}

// Column i of a per-sample coefficient table; zeros past the frame.
inline std::vector<double> column(const std::vector<std::vector<double>>& c, std::size_t i) {
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (i < c[j].size()) out[j] = c[j][i];
  return out;
}

inline std::vector<double> kappa_column(const FrenetData& frenet, int i) {
  std::vector<double> out(frenet.size());
  for (std::size_t j = 0; j < frenet.size(); ++j) out[j] = frenet.kappa(j, i);
  return out;
}

}  // namespace torq::detail
