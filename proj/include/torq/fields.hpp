#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torq/manifold.hpp"
#include "torq/parallel.hpp"

namespace torq {

/// A vector field on a chart. `jacobian(p)(i, j)` = ∂_j V^i; when absent,
/// central differences are used.
struct FieldSpec {
  std::shared_ptr<const ChartMetric> metric;
  std::string name;
  std::vector<double> params;
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jacobian;
  /// `jacobian` is a fitted approximation rather than a closed form.
  bool approximate_jacobian = false;

  bool has_analytic_jacobian() const { return jacobian && !approximate_jacobian; }
  Vec at(const Vec& p) const;
  Mat jacobian_at(const Vec& p) const;
};

std::vector<std::string> builtin_field_names();

/// radial_unit: E/|E| on punctured Euclidean space.
/// hyperbolic_em: −x_m ∂_m on the upper half space.
/// concircular_affine: ρx + v, params = [ρ, v_1..v_m] (missing entries 0,
///   ρ defaults to 1).
/// constant: v, params = [v_1..v_m] (default e_1).
/// twisted_torqued: λ(t)μ(x)∂_t on warped_interval_product with
///   μ(x) = exp(Σ a_i x_i), params = [a_1..a_{m−1}] (default a = e_1).
FieldSpec builtin_field(std::string_view name, std::shared_ptr<const ChartMetric> metric,
                        std::span<const double> params = {});

/// Field known only at scattered points. Values and Jacobians elsewhere come
/// from a local quadratic least-squares fit over the nearest samples.
FieldSpec field_from_samples(std::shared_ptr<const ChartMetric> metric,
                             std::vector<Vec> points, std::vector<Vec> vectors);

/// ∇_X V at p.
Vec covariant_derivative(const FieldSpec& field, const Vec& p, const Vec& x);

struct TorseFormingFit {
  double rho = 0.0;
  /// ω(∂_i) in chart components.
  Vec omega;
  /// Generative vector: ⟨W, X⟩ = ω(X).
  Vec W;
  /// Norm of the least-squares residual of ∇_{e_a}V = ρ e_a + ω(e_a) V.
  double residual = 0.0;
};

/// Fits ρ and ω at p over an orthonormal chart frame. Throws
/// PreconditionError when V(p) = 0 and NumericalError when the least-squares
/// system is rank deficient.
TorseFormingFit torse_forming_fit(const FieldSpec& field, const Vec& p);

enum class FieldClass {
  concircular,
  recurrent,
  torqued,
  anti_torqued,
  torse_forming_general,
  not_torse_forming
};

std::string to_string(FieldClass c);

struct TorseFormingReport {
  std::vector<Vec> points;
  std::vector<double> rho;
  std::vector<Vec> omega;
  std::vector<Vec> W;
  std::vector<double> residual;
  FieldClass label = FieldClass::not_torse_forming;
  /// Every class whose defining identity holds at all samples.
  std::vector<FieldClass> passing;
  /// ρ and ω nonzero at every sample.
  bool proper = false;
  double tol = 0.0;

  double max_residual = 0.0;
  double max_abs_rho = 0.0;
  double max_omega_norm = 0.0;
  double max_abs_VW = 0.0;       ///< max |⟨V, W⟩|
  double max_anti_defect = 0.0;  ///< max |W + ρV|
};

/// Default classification tolerance: 1e-6 with analytic Jacobians, 1e-3
/// otherwise.
double default_field_tolerance(const FieldSpec& field);

/// Fits every sample and assigns the most specific label. Anti-torqued and
/// torqued require a nontrivial conformal scalar resp. generating form, so
/// parallel fields land in concircular.
TorseFormingReport classify_field(const FieldSpec& field, std::span<const Vec> points,
                                  double tol, ExecPolicy policy = ExecPolicy::parallel);

/// (| ⟨V,V⟩ − 1 |, |∇_V V|) at p.
std::pair<double, double> unit_geodesic_defect(const FieldSpec& field, const Vec& p);

}  // namespace torq
