#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torq/curve.hpp"
#include "torq/fields.hpp"

namespace torq {

std::vector<std::string> builtin_curve_names();

/// Unit-speed closed-form curves with analytic derivatives.
///
///   log_spiral               [s_lo, s_hi] = [1, 10]     (s/√2)(cos log s, 0, sin log s)
///   cone_loxodrome           [s_lo, s_hi] = [1, 10]     (s/4)(cos m(s), √3, sin m(s)),
///                                                       m(s) = 2√3 log(s/4)
///   circle_origin            [radius] = [1]             one turn in the xy-plane
///   hyperbolic_vertical_line [s_lo, s_hi] = [0, 1]      (0, 0, e^s) in the upper half space
///   rectifying               [a, b, r, s_lo, s_hi] = [1, 1, 0.6, 0, 2]
///                            γ = √(a² + (s+b)²)·y(arctan((s+b)/a)) with y a unit-speed
///                            small circle of angular radius r on the unit sphere; position
///                            vector (s+b)T + aB
///   helix                    [radius, rise per radian, s_lo, s_hi] = [1, 0.5, 0, 10]
///   line_origin              [s_lo, s_hi] = [1, 3]      s·(1, 2, 2)/3
///
/// All live in dimension 3: hyperbolic_vertical_line on hyperbolic_upper_half,
/// helix on euclidean, the others on punctured_euclidean.
CurveSamples builtin_curve(std::string_view name, std::span<const double> params = {},
                           std::size_t samples = 201);

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Uniform checkpoints stored by the adaptive pass; evaluation between
  /// them restarts from the nearest one with fixed Runge-Kutta steps.
  std::size_t checkpoints = 2048;
};

/// Initial point and positively oriented orthonormal frame (columns T, N, B).
struct FrameInit {
  Vec point = Vec::Zero(3);
  Mat frame = Mat::Identity(3, 3);
};

struct IntegratedCurve {
  /// Arc-length samples with γ, γ', γ'' from the integrator (euclidean(3);
  /// punctured_euclidean(3) for slant synthesis).
  CurveSamples curve;
  /// Integrated frames (columns T, N, B) at the grid samples.
  std::vector<Mat> frames;
  std::vector<double> kappa;
  std::vector<double> tau;
};

/// Integrates γ' = T, T' = κN, N' = −κT + τB, B' = −τN over [s0, s1] with
/// an adaptive Dormand-Prince pair. Throws PreconditionError when κ ≤ 0 is
/// met or the initial frame is not a positively oriented orthonormal frame.
IntegratedCurve frenet_integrate(const std::function<double(double)>& kappa,
                                 const std::function<double(double)>& tau,
                                 const FrameInit& init, double s0, double s1,
                                 std::size_t samples, const IntegratorOptions& options = {});

/// Scalar function of arc length with derivatives up to order 3.
struct ScalarProfile {
  std::string name;
  std::vector<double> params;
  std::function<double(double, int)> eval;

  double operator()(double s, int order = 0) const { return eval(s, order); }
};

/// slope·s + intercept.
ScalarProfile affine_profile(double slope, double intercept);
/// √(a s² + b s + c).
ScalarProfile sqrt_quadratic_profile(double a, double b, double c);
/// coeff·s^exponent, s > 0.
ScalarProfile power_profile(double coeff, double exponent);
ScalarProfile constant_profile(double value);
/// "constant" [value], "affine" [slope, intercept], "power" [coeff, exponent]
/// or "sqrt_quadratic" [a, b, c].
ScalarProfile make_profile(std::string_view name, std::span<const double> params);

struct SlantSynthesisConfig {
  ScalarProfile phi;
  double theta = 0.0;
  double s0 = 0.0;
  double s1 = 1.0;
  /// Initial torsion. When absent the value compatible with |γ(s0)| = φ(s0)
  /// is used, τ0 = F(s0)/(cos θ·g0).
  std::optional<double> tau0;
  std::size_t samples = 401;
  IntegratorOptions integrator;
  double verify_tol = 1e-4;
};

struct SlantSynthesis {
  IntegratedCurve result;
  double g0 = 0.0;
  double tau0 = 0.0;
  /// τ0 required for |γ| = φ at s0.
  double tau0_compatible = 0.0;
  /// max |⟨γ, N⟩/|γ| − cos θ| over the grid.
  double max_cos_defect = 0.0;
  /// max ||γ| − φ| over the grid.
  double max_phi_defect = 0.0;
  bool verified = false;
  std::vector<std::string> notes;
};

/// Builds a Euclidean slant helix about the radial axis from its distance
/// function: κ = ((φφ')' − 1)/(cos θ φ), τ from
/// τ' = τ(F' + cos²θ φ τ²)/F with F = (cos²θ + (φφ')' − 1)φ', and the
/// initial point γ(s0) = φφ'T + cos θ φ N + g0 B, g0 ≥ 0.
/// Throws PreconditionError for cos θ = 0, constant φ, φ ≤ 0, a negative
/// g² budget or κ ≤ 0 on the grid, and NumericalError at a root of F.
SlantSynthesis synthesize_slant_from_phi(const SlantSynthesisConfig& config);

struct ConcircularSynthesisConfig {
  ScalarProfile f3;
  double theta = 1.0;
  double rho = 1.0;
  double f1_0 = 1.0;
  double s0 = 0.0;
  double s1 = 1.0;
  std::size_t samples = 201;
  FrameInit init;
  IntegratorOptions integrator;
  double verify_tol = 1e-6;
};

struct ConcircularSynthesis {
  IntegratedCurve result;
  /// V(x) = ρx + v on euclidean(3).
  FieldSpec field;
  Vec anchor;
  std::vector<double> f1;
  /// max |⟨V(γ), N⟩ − θ| over the grid.
  double max_theta_defect = 0.0;
  /// τ ≡ 0 (constant f3): κ vanishes too and the output is a straight line.
  bool degenerate = false;
  bool verified = false;
  std::vector<std::string> notes;
};

/// Curve whose decomposition V = f1 T + θ N + f3 B in the concircular field
/// V = ρx + v follows the prescribed f3: τ = −f3'/θ, κ = τ f3/f1 and
/// f1' = θτ f3/f1 + ρ. Throws PreconditionError for θ = 0 or κ < 0 and
/// NumericalError when f1 reaches zero.
ConcircularSynthesis synthesize_concircular(const ConcircularSynthesisConfig& config);

}  // namespace torq
