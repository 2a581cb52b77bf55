#pragma once

#include <string>
#include <vector>

#include "torq/fields.hpp"
#include "torq/frenet.hpp"
#include "torq/residual.hpp"

namespace torq {

/// Which frame vector, if any, the axis is parallel to along the curve.
enum class SlantCase { tangent_parallel, normal_parallel, generic };

std::string to_string(SlantCase c);

/// ⟨V, N_2⟩ at every Frenet sample. For order-1 curves (no N_2) the
/// tangential product ⟨V, T⟩ is returned instead and `tangential` is set.
std::vector<double> angle_function(const FrenetData& frenet, const FieldSpec& axis,
                                   bool* tangential = nullptr);

struct SlantReport {
  std::vector<double> s;
  std::vector<double> angle_samples;
  bool tangential_angle = false;
  double cos_theta = 0.0;
  double theta_hat = 0.0;  ///< in [0, π]
  double constancy_residual = 0.0;
  bool is_slant_helix = false;

  /// coeffs[j][i] = ⟨V, N_{i+1}⟩ at sample j (f_1, cos θ, f_3, ...).
  std::vector<std::vector<double>> coeffs;
  std::vector<double> rho;
  std::vector<Vec> W;

  SlantCase slant_case = SlantCase::generic;
  /// Axis ∥ T: max |1 − f_1²|; axis ∥ N_2: max |1 − f_2²|.
  double parallel_defect = 0.0;
  bool geodesic = false;
  /// Axis ∥ N_2: max |ρ + cos θ κ_1| (ρ = −κ_1 for cos θ = 1).
  double normal_case_residual = 0.0;
  /// max |Σ f_i² − 1|; meaningful for unit axes.
  double unit_decomposition_defect = 0.0;

  FieldClass axis_label = FieldClass::not_torse_forming;
  double tol = 0.0;
  std::vector<std::string> diagnostics;
};

/// Angle statistics, decomposition coefficients and the Case 1/2/3 split
/// for a curve and an axis field. A non-anti-torqued axis produces a
/// diagnostic, not an error.
SlantReport slant_report(const FrenetData& frenet, const FieldSpec& axis, double tol,
                         ExecPolicy policy = ExecPolicy::parallel);

struct SystemCheck {
  bool applicable = false;
  /// "general", "three_dim" or "perpendicular" (anti-torqued);
  /// "general", "three_dim", "concircular" or "identity" (torqued).
  std::string variant;
  std::vector<Residual> lines;
  std::vector<std::string> notes;
};

/// Residuals of the characterizing system of an anti-torqued slant helix:
/// the general-m system, its three-dimensional form, or the θ = π/2 form
/// when cos θ vanishes within tol. Arc-length derivatives of the
/// coefficients use the five-point stencil on the Frenet grid. Not
/// applicable (with a note) outside Case 3.
SystemCheck system_residuals_anti(const FrenetData& frenet, const SlantReport& report,
                                  double tol);

struct RatioLaw {
  double c_hat = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  bool passed() const { return residual < tol; }
};

/// Fits τ/κ = c f/√(1 − f²) by the mean of (τ/κ)√(1 − f²)/f. Requires
/// cos θ = 0 within tol, order 3 and 0 < |f| < 1 at every sample.
RatioLaw ratio_law_check(const FrenetData& frenet, const SlantReport& report, double tol);

enum class EuclideanBranch { circle_origin, log_spiral, rectifying, generic, none };

std::string to_string(EuclideanBranch b);

struct EuclideanSlantOptions {
  /// Tolerance of the algebraic predicates.
  double tol = 1e-6;
  /// Tolerance of residuals that need arc-length derivatives of sampled
  /// quantities.
  double derivative_tol = 1e-4;
};

struct EuclideanSlantReport {
  EuclideanBranch branch = EuclideanBranch::none;
  std::vector<EuclideanBranch> passing;

  std::vector<double> s;
  std::vector<double> phi;
  std::vector<double> dphi;
  std::vector<double> cos_samples;  ///< ⟨γ, N⟩/|γ|
  std::vector<double> g;            ///< ⟨γ, B⟩
  std::vector<double> F;
  double cos_theta = 0.0;
  double constancy_residual = 0.0;

  // (a)
  double phi_spread = 0.0;
  double plane_defect = 0.0;  ///< max |⟨γ, B⟩|
  double cos_minus_one = 0.0;
  // (b)
  double max_abs_tau = 0.0;
  double min_abs_dphi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double affine_fit_residual = 0.0;
  double slope_defect = 0.0;  ///< ||slope| − sin θ|
  double kappa_law_residual = 0.0;
  // (c)
  double max_abs_gamma_N = 0.0;
  // (d)
  std::vector<Residual> generic_residuals;

  EuclideanSlantOptions options;
  std::vector<std::string> diagnostics;
};

/// Branch of a Euclidean slant helix about the radial axis, tested in the
/// order circle centered at the origin, logarithmic spiral, rectifying
/// curve, generic (κ and τ laws). Every passing predicate is recorded.
EuclideanSlantReport classify_euclidean_slant(const FrenetData& frenet,
                                              const EuclideanSlantOptions& options = {});

}  // namespace torq
