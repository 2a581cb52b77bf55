#pragma once

#include <cstddef>
#include <vector>

#include "torq/curve.hpp"
#include "torq/parallel.hpp"

namespace torq {

struct FrenetOptions {
  /// An iterated derivative whose Gram-Schmidt residual is below
  /// rank_tol·max(1, |∇^k T|) is treated as dependent.
  double rank_tol = 1e-7;
  /// Step of the central differences taken along the curve.
  double fd_step = 1e-3;
  /// Allowed | |γ'| − 1 |; zero selects 1e-6 (analytic) or 1e-4 (interpolated).
  double unit_speed_tol = 0.0;
  ExecPolicy policy = ExecPolicy::parallel;
};

/// Frenet frame and curvatures at a single arc-length value.
///
/// `frame` holds N_1 = T, N_2, ...; it has `order` vectors, or m vectors when
/// order ≥ m − 1 (the last one fixed by chart orientation). `curvatures[j]`
/// couples frame[j] and frame[j + 1]; entries past order − 1 are zero.
struct FrameSample {
  int order = 0;
  Vec point;
  std::vector<Vec> frame;
  std::vector<double> curvatures;
};

struct FrenetData {
  std::shared_ptr<const ChartMetric> metric;
  int dim = 0;
  int order = 0;
  int frame_size = 0;
  /// Grid indices of the reported samples (interior samples only).
  std::vector<std::size_t> index;
  std::vector<double> s;
  std::vector<Vec> points;
  std::vector<std::vector<Vec>> frames;
  std::vector<std::vector<double>> curvatures;

  std::size_t size() const { return s.size(); }
  /// κ_i (1-based) at sample j; zero past the stored curvatures.
  double kappa(std::size_t j, int i) const;
};

/// ∇_T^k T at arc length s.
Vec iterated_tangent_derivative(const CurveSamples& curve, double s, int k, double h);

FrameSample frame_at(const CurveSamples& curve, double s, const FrenetOptions& options = {});

/// Frenet data on every grid sample where the derivative stencils fit.
/// Throws PreconditionError for non-unit-speed input or when the order
/// changes along the grid.
FrenetData frenet_apparatus(const CurveSamples& curve, const FrenetOptions& options = {});

/// max_i |∇_T N_i − (−κ_{i−1} N_{i−1} + κ_i N_{i+1})|_g at s, with ∇_T N_i
/// obtained by differencing frame_at along the curve.
double frenet_formula_residual(const CurveSamples& curve, double s,
                               const FrenetOptions& options = {});

/// max_{i,j} |⟨N_i, N_j⟩ − δ_ij| over all samples.
double frame_orthonormality_defect(const FrenetData& frenet);

struct SpecialCurve {
  bool geodesic = false;
  double max_kappa1 = 0.0;
  bool circle = false;
  double circle_R = 0.0;       ///< constant first curvature
  double circle_radius = 0.0;  ///< 1/R
  double circle_residual = 0.0;
  bool general_helix = false;
  double helix_ratio = 0.0;  ///< mean τ/κ
  double helix_ratio_spread = 0.0;
};

/// Geodesic, Riemannian circle and general-helix flags. Circle residuals use
/// the five-point stencil on the (uniform) arc-length grid of `frenet`.
SpecialCurve detect_special(const FrenetData& frenet, double tol);

/// Five-point derivative of samples on a uniform grid of spacing h at
/// interior index i (2 ≤ i ≤ n − 3).
template <class T>
T grid_derivative(const std::vector<T>& values, std::size_t i, double h) {
  return (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) /
         (12.0 * h);
}

/// Spacing of a uniform grid; throws PreconditionError if it is not uniform.
double uniform_spacing(const std::vector<double>& grid);

}  // namespace torq
