#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "torq/linalg.hpp"
#include "torq/manifold.hpp"

namespace torq {

/// Closed-form (or otherwise smoothly evaluable) curve t ↦ γ(t) in chart
/// coordinates. `eval(t, k)` returns the k-th parameter derivative for
/// k ≤ max_order; higher orders are obtained by finite differences.
struct AnalyticCurve {
  std::function<Vec(double, int)> eval;
  int max_order = 0;
  /// Parameter interval on which `eval` is valid (may exceed the grid).
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// A curve sampled on a strictly increasing grid, optionally backed by an
/// analytic evaluator. Sampled input curves receive a smooth interpolating
/// backend (`interpolated == true`).
struct CurveSamples {
  std::shared_ptr<const ChartMetric> metric;
  std::vector<double> grid;
  std::vector<Vec> points;
  std::shared_ptr<const AnalyticCurve> analytic;
  bool arclength = false;
  bool interpolated = false;

  int dim() const { return metric ? metric->dim : 0; }
  std::size_t size() const { return grid.size(); }
  double lo() const { return analytic ? analytic->lo : grid.front(); }
  double hi() const { return analytic ? analytic->hi : grid.back(); }
};

/// Fourth-order central difference of f at t with step h.
template <class F>
auto central_difference(F&& f, double t, double h) -> std::decay_t<decltype(f(t))> {
  return (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
}

/// Uniform grid of n points on [a, b].
std::vector<double> linspace(double a, double b, std::size_t n);

/// Samples an analytic curve on n uniform parameter values in [a, b] and
/// checks every sample against the metric domain.
CurveSamples make_analytic_curve(std::shared_ptr<const ChartMetric> metric,
                                 AnalyticCurve curve, double a, double b, std::size_t n,
                                 bool arclength);

/// Wraps raw samples (strictly increasing grid) with a barycentric rational
/// interpolant so derivatives are available between samples.
CurveSamples make_sampled_curve(std::shared_ptr<const ChartMetric> metric,
                                std::vector<double> grid, std::vector<Vec> points);

/// k-th parameter derivative at t: analytic up to max_order, nested central
/// differences with step h beyond that. Throws DomainError if a stencil
/// point leaves the curve's parameter interval.
Vec curve_derivative(const CurveSamples& curve, double t, int order, double h = 1e-3);

/// |γ'(t)|_g.
double speed(const CurveSamples& curve, double t);

/// Arc length of the curve over its grid range (Gauss-Legendre panels).
double curve_length(const CurveSamples& curve);

/// Unit-speed reparametrization with n_out uniform arc-length samples.
/// s(t) is integrated with Gauss-Legendre panels and inverted by Newton
/// iteration; the returned curve exposes γ, γ', γ'' exactly (chain rule).
/// Throws PreconditionError when the speed vanishes at a sample.
CurveSamples reparametrize_arclength(const CurveSamples& curve, std::size_t n_out);

/// (∇_{c'}W)^k = dW^k/ds + Γ^k_ij c'^i W^j for a field given as a function
/// of the curve parameter. When `field_derivative` is provided it is used
/// for dW/ds; otherwise a central difference with step h.
Vec covariant_derivative_along(const ChartMetric& metric, const CurveSamples& curve,
                               const std::function<Vec(double)>& field, double s,
                               const std::function<Vec(double)>& field_derivative = {},
                               double h = 1e-3);

/// Same, for a field given by its values at the grid samples. `s` must be a
/// grid value; dW/ds uses the five-point stencil on a uniform grid. Near the
/// ends a one-sided stencil is used only if `one_sided_fallback` is set.
Vec covariant_derivative_along(const ChartMetric& metric, const CurveSamples& curve,
                               std::span<const Vec> field_samples, double s,
                               bool one_sided_fallback = false);

}  // namespace torq
