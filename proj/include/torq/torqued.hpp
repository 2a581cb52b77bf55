#pragma once

#include <span>
#include <string>
#include <vector>

#include "torq/fields.hpp"
#include "torq/frenet.hpp"
#include "torq/residual.hpp"
#include "torq/slant.hpp"

namespace torq {

/// (a) V ∥ T, (b) V ∥ N_2, (c) neither.
enum class TorquedCase { tangent_parallel, normal_parallel, generic };

std::string to_string(TorquedCase c);

struct TorquedReport {
  std::vector<double> s;
  /// ⟨V, N_2⟩ per sample (⟨V, T⟩ for order-1 curves).
  std::vector<double> theta_samples;
  double theta_hat = 0.0;
  double constancy_residual = 0.0;
  bool is_torqued_curve = false;

  /// f[j][i] = ⟨V, N_{i+1}⟩ and g[j][i] = ⟨W, N_{i+1}⟩ at sample j.
  std::vector<std::vector<double>> f;
  std::vector<std::vector<double>> g;
  std::vector<double> rho;

  TorquedCase torqued_case = TorquedCase::generic;
  bool geodesic = false;
  /// Case (b): max |κ_1 f_2 + ρ| and max |κ_2|.
  double normal_case_residual = 0.0;
  double max_abs_kappa2 = 0.0;

  /// max |Σ f_i g_i| (⟨V, W⟩ through the decomposition).
  double orthogonality_residual = 0.0;
  /// max |V − Σ f_i N_i| and |W − Σ g_i N_i|.
  double v_decomposition_defect = 0.0;
  double w_decomposition_defect = 0.0;

  FieldClass field_label = FieldClass::not_torse_forming;
  /// g_i ≡ 0 within the field tolerance.
  bool concircular = false;
  double tol = 0.0;
  std::vector<std::string> diagnostics;
};

/// ⟨V, N_2⟩ statistics, f and g coefficients and the case split for a curve
/// in a torse-forming field.
TorquedReport torqued_report(const FrenetData& frenet, const FieldSpec& field, double tol,
                             ExecPolicy policy = ExecPolicy::parallel);

/// Residuals of the torqued-curve system from ∇_T V = ρT + ω(T)V with
/// ω(T) = g_1: the general-m lines, their three-dimensional form, or the
/// concircular reduction when the field is concircular. With
/// `varying_theta` the sampled f_2 and its derivative replace the constant
/// θ, which turns the system into an identity valid along any curve.
/// Throws PreconditionError in case (a).
SystemCheck system_residuals_torqued(const FrenetData& frenet, const TorquedReport& report,
                                     double tol, bool varying_theta = false);

/// max |θ T(κ(1 + φ²)/T(φ)) + T(ρ/T(φ)) + θκφ| with φ = τ/κ, by nested
/// five-point differences on the Frenet grid. Throws PreconditionError if
/// the order is below 3 or |T(φ)| < 1e-8 at an interior sample.
double concircular_ode_residual(const FrenetData& frenet, std::span<const double> rho, double theta);

}  // namespace torq
