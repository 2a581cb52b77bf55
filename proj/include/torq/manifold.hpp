#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torq/linalg.hpp"

namespace torq {

using ChartPoint = Vec;

/// Riemannian metric on a single coordinate chart.
///
/// `components(p)` returns the symmetric positive definite matrix g_ij(p).
/// `partials(p)`, when set, returns the m matrices ∂_k g_ij(p); otherwise
/// metric derivatives fall back to central differences. Every evaluation
/// checks `domain` first and throws DomainError outside it.
struct ChartMetric {
  int dim = 0;
  std::string name;
  std::vector<double> params;
  std::function<Mat(const Vec&)> components;
  std::function<std::vector<Mat>(const Vec&)> partials;
  std::function<bool(const Vec&)> domain;
  /// Christoffel symbols vanish identically (constant components).
  bool flat = false;

  bool contains(const Vec& p) const;
  /// g_ij(p); throws DomainError if p is outside the domain.
  Mat at(const Vec& p) const;
  /// ∂_k g_ij(p) for k = 0..dim-1, analytic when available.
  std::vector<Mat> derivatives(const Vec& p) const;
  bool has_analytic_derivatives() const { return static_cast<bool>(partials); }
};

/// Names accepted by builtin_metric.
std::vector<std::string> builtin_metric_names();

/// euclidean, punctured_euclidean, hyperbolic_upper_half,
/// warped_interval_product.
///
/// warped_interval_product uses coordinates (t, x_1, ..., x_{m-1}) with
/// g = dt² + λ(t)² Σ dx_i², λ(t) = c0·exp(c1·t), t in (t_lo, t_hi).
/// params = [c0, c1, t_lo, t_hi], defaults [1, 1, -10, 10].
ChartMetric builtin_metric(std::string_view name, int dim,
                           std::span<const double> params = {});

/// Γ^k_ij stored densely; symmetric in (i, j).
class Christoffel {
 public:
  explicit Christoffel(int dim) : dim_(dim), data_(dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int k, int i, int j) { return data_[(k * dim_ + i) * dim_ + j]; }
  double operator()(int k, int i, int j) const {
    return data_[(k * dim_ + i) * dim_ + j];
  }
  /// (Γ(u, w))^k = Γ^k_ij u^i w^j.
  Vec contract(const Vec& u, const Vec& w) const;
  /// max_{k,i,j} |Γ^k_ij - Γ^k_ji|.
  double asymmetry() const;

 private:
  int dim_;
  std::vector<double> data_;
};

/// Levi-Civita connection coefficients at p. Uses analytic metric
/// derivatives when present, otherwise central differences with step
/// eps^{1/3}·max(1, |x_k|). Throws DomainError when p or a stencil point
/// leaves the domain and NumericalError when g(p) is singular.
Christoffel christoffel(const ChartMetric& metric, const ChartPoint& p);

/// uᵀ g(p) v.
double inner(const ChartMetric& metric, const ChartPoint& p, const Vec& u,
             const Vec& v);

double norm(const ChartMetric& metric, const ChartPoint& p, const Vec& u);

/// Columns form a g(p)-orthonormal frame obtained by Gram-Schmidt on the
/// chart basis.
Mat orthonormal_chart_frame(const ChartMetric& metric, const ChartPoint& p);

/// Sign of the chart volume form on the columns of `frame`.
int orientation(const Mat& frame);

}  // namespace torq
