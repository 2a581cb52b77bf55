#include "torq/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "torq/error.hpp"
#include "torq/frenet.hpp"

namespace torq {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;
using cplx = std::complex<double>;

double param_or(std::span<const double> params, std::size_t i, double fallback) {
  return i < params.size() ? params[i] : fallback;
}

std::shared_ptr<const ChartMetric> shared_metric(std::string_view name, int dim = 3) {
  return std::make_shared<const ChartMetric>(builtin_metric(name, dim));
}

void require_range(std::string_view curve, double lo, double hi) {
  if (!(lo < hi))
    throw InputError("curve " + std::string(curve) + ": empty arc-length interval");
}

// k-th derivative of (s/scale)^beta for s > 0.
cplx power_derivative(double s, double scale, cplx beta, int k) {
  cplx c = 1.0;
  for (int j = 0; j < k; ++j) c *= beta - static_cast<double>(j);
  return c * std::exp((beta - static_cast<double>(k)) * std::log(s / scale)) /
         std::pow(scale, k);
}

// k-th derivative of r·(cos(s/c), sin(s/c)).
std::pair<double, double> circle_derivative(double s, double r, double c, int k) {
  const double phase = s / c + k * std::numbers::pi / 2.0;
  const double amp = r / std::pow(c, k);
  return {amp * std::cos(phase), amp * std::sin(phase)};
}

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

CurveSamples log_spiral(std::span<const double> params, std::size_t n) {
  const double lo = param_or(params, 0, 1.0), hi = param_or(params, 1, 10.0);
  require_range("log_spiral", lo, hi);
  if (!(lo > 0.0)) throw InputError("log_spiral requires s > 0");
  AnalyticCurve c;
  c.max_order = 8;
  c.lo = 0.0;
  c.eval = [](double s, int k) {
    if (!(s > 0.0)) throw DomainError("log_spiral is defined for s > 0");
    const cplx w = power_derivative(s, 1.0, cplx(1.0, 1.0), k) / std::numbers::sqrt2;
    return vec3(w.real(), 0.0, w.imag());
  };
  return make_analytic_curve(shared_metric("punctured_euclidean"), std::move(c), lo, hi, n, true);
}

CurveSamples cone_loxodrome(std::span<const double> params, std::size_t n) {
  const double lo = param_or(params, 0, 1.0), hi = param_or(params, 1, 10.0);
  require_range("cone_loxodrome", lo, hi);
  if (!(lo > 0.0)) throw InputError("cone_loxodrome requires s > 0");
  const double alpha = 2.0 * std::sqrt(3.0);
  AnalyticCurve c;
  c.max_order = 8;
  c.lo = 0.0;
  c.eval = [alpha](double s, int k) {
    if (!(s > 0.0)) throw DomainError("cone_loxodrome is defined for s > 0");
    const cplx w = power_derivative(s, 4.0, cplx(1.0, alpha), k);
    const double y = k == 0 ? std::sqrt(3.0) * s / 4.0 : (k == 1 ? std::sqrt(3.0) / 4.0 : 0.0);
    return vec3(w.real(), y, w.imag());
  };
  return make_analytic_curve(shared_metric("punctured_euclidean"), std::move(c), lo, hi, n, true);
}

CurveSamples circle_origin(std::span<const double> params, std::size_t n) {
  const double r = param_or(params, 0, 1.0);
  if (!(r > 0.0)) throw InputError("circle_origin requires a positive radius");
  AnalyticCurve c;
  c.max_order = 8;
  c.eval = [r](double s, int k) {
    const auto [x, y] = circle_derivative(s, r, r, k);
    return vec3(x, y, 0.0);
  };
  return make_analytic_curve(shared_metric("punctured_euclidean"), std::move(c), 0.0,
                             2.0 * std::numbers::pi * r, n, true);
}

CurveSamples hyperbolic_vertical_line(std::span<const double> params, std::size_t n) {
  const double lo = param_or(params, 0, 0.0), hi = param_or(params, 1, 1.0);
  require_range("hyperbolic_vertical_line", lo, hi);
  AnalyticCurve c;
  c.max_order = 8;
  c.eval = [](double s, int) { return vec3(0.0, 0.0, std::exp(s)); };
  return make_analytic_curve(shared_metric("hyperbolic_upper_half"), std::move(c), lo, hi, n,
                             true);
}

CurveSamples rectifying(std::span<const double> params, std::size_t n) {
  const double a = param_or(params, 0, 1.0), b = param_or(params, 1, 1.0);
  const double r = param_or(params, 2, 0.6);
  const double lo = param_or(params, 3, 0.0), hi = param_or(params, 4, 2.0);
  require_range("rectifying", lo, hi);
  if (!(a > 0.0)) throw InputError("rectifying requires a > 0");
  if (!(r > 0.0 && r < std::numbers::pi / 2.0))
    throw InputError("rectifying requires 0 < r < π/2 (a great circle gives a planar curve)");
  const double sigma = std::sin(r), height = std::cos(r);
  AnalyticCurve c;
  c.max_order = 2;
  c.eval = [a, b, sigma, height](double s, int k) {
    const double u = s + b;
    const double R2 = a * a + u * u, R = std::sqrt(R2);
    const double t = std::atan(u / a);
    const double w = t / sigma;
    const Vec y = vec3(sigma * std::cos(w), sigma * std::sin(w), height);
    if (k == 0) return Vec(R * y);
    const Vec dy = vec3(-std::sin(w), std::cos(w), 0.0);
    const double dt = a / R2, dR = u / R;
    if (k == 1) return Vec(dR * y + R * dt * dy);
    if (k != 2) throw InputError("rectifying: derivative order above 2 requested");
    const Vec ddy = vec3(-std::cos(w), -std::sin(w), 0.0) / sigma;
    const double ddt = -2.0 * a * u / (R2 * R2), ddR = a * a / (R2 * R);
    return Vec(ddR * y + 2.0 * dR * dt * dy + R * (ddt * dy + dt * dt * ddy));
  };
  return make_analytic_curve(shared_metric("punctured_euclidean"), std::move(c), lo, hi, n, true);
}

CurveSamples helix(std::span<const double> params, std::size_t n) {
  const double r = param_or(params, 0, 1.0), h = param_or(params, 1, 0.5);
  const double lo = param_or(params, 2, 0.0), hi = param_or(params, 3, 10.0);
  require_range("helix", lo, hi);
  if (!(r > 0.0)) throw InputError("helix requires a positive radius");
  const double c = std::hypot(r, h);
  AnalyticCurve curve;
  curve.max_order = 8;
  curve.eval = [r, h, c](double s, int k) {
    const auto [x, y] = circle_derivative(s, r, c, k);
    const double z = k == 0 ? h * s / c : (k == 1 ? h / c : 0.0);
    return vec3(x, y, z);
  };
  return make_analytic_curve(shared_metric("euclidean"), std::move(curve), lo, hi, n, true);
}

CurveSamples line_origin(std::span<const double> params, std::size_t n) {
  const double lo = param_or(params, 0, 1.0), hi = param_or(params, 1, 3.0);
  require_range("line_origin", lo, hi);
  if (!(lo > 0.0)) throw InputError("line_origin requires s > 0 (the origin is excluded)");
  const Vec u = vec3(1.0, 2.0, 2.0) / 3.0;
  AnalyticCurve c;
  c.max_order = 8;
  c.lo = 0.0;
  c.eval = [u](double s, int k) -> Vec {
    if (k == 0) return s * u;
    if (k == 1) return u;
    return Vec::Zero(3);
  };
  return make_analytic_curve(shared_metric("punctured_euclidean"), std::move(c), lo, hi, n, true);
}

// ---------------------------------------------------------------------------
// Frenet flow with optional auxiliary state. Layout: γ, T, N, B, aux.

struct FlowSystem {
  std::function<double(double, const double*)> kappa;
  std::function<double(double, const double*)> tau;
  std::function<void(double, const double*, double*)> aux_rhs;
  std::size_t aux_size = 0;

  void operator()(const State& x, State& dx, double s) const {
    const double* aux = x.data() + 12;
    const double k = kappa(s, aux), t = tau(s, aux);
    for (int i = 0; i < 3; ++i) {
      dx[i] = x[3 + i];
      dx[3 + i] = k * x[6 + i];
      dx[6 + i] = -k * x[3 + i] + t * x[9 + i];
      dx[9 + i] = -t * x[6 + i];
    }
    if (aux_size) aux_rhs(s, aux, dx.data() + 12);
  }
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << (x == 0.0 ? 0.0 : x);
  return os.str();
}

std::string at_s(double s) {
  std::ostringstream os;
  os.precision(17);
  os << "s = " << s;
  return os.str();
}

class Flow {
 public:
  Flow(FlowSystem system, State x0, double s0, double s1, const IntegratorOptions& options,
       bool allow_zero_kappa)
      : system_(std::move(system)), s0_(s0), s1_(s1) {
    const std::size_t m = std::max<std::size_t>(options.checkpoints, 16);
    step_ = (s1 - s0) / static_cast<double>(m);
    std::vector<double> times(m + 1);
    for (std::size_t i = 0; i <= m; ++i) times[i] = s0 + step_ * static_cast<double>(i);
    times.back() = s1;
    checkpoints_.reserve(m + 1);
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(options.abs_tol,
                                                                              options.rel_tol);
    try {
      odeint::integrate_times(stepper, system_, x0, times.begin(), times.end(), step_ / 4.0,
                              [this](const State& x, double) { checkpoints_.push_back(x); });
    } catch (const odeint::odeint_error& e) {
      throw NumericalError(std::string("Frenet integration failed: ") + e.what());
    }
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
      const double k = system_.kappa(times[i], checkpoints_[i].data() + 12);
      if (!std::isfinite(k) || k < 0.0 || (k == 0.0 && !allow_zero_kappa))
        throw PreconditionError("curvature must stay positive; κ = " + num(k) +
                                " at " + at_s(times[i]));
    }
  }

  State at(double s) const {
    if (s < s0_ - 1e-12 * std::max(1.0, std::abs(s0_)) ||
        s > s1_ + 1e-12 * std::max(1.0, std::abs(s1_)))
      throw DomainError("integrated curve evaluated outside [" + num(s0_) + ", " +
                        num(s1_) + "] at " + at_s(s));
    const double pos = (s - s0_) / step_;
    const auto i = static_cast<std::size_t>(std::clamp(
        std::lround(pos), 0L, static_cast<long>(checkpoints_.size() - 1)));
    State x = checkpoints_[i];
    double t = i + 1 == checkpoints_.size() ? s1_ : s0_ + step_ * static_cast<double>(i);
    if (t == s) return x;
    const int substeps = 8;
    const double dt = (s - t) / substeps;
    odeint::runge_kutta_fehlberg78<State> rk;
    for (int k = 0; k < substeps; ++k) {
      rk.do_step(system_, x, t, dt);
      t += dt;
    }
    return x;
  }

  double kappa(double s, const State& x) const { return system_.kappa(s, x.data() + 12); }
  double tau(double s, const State& x) const { return system_.tau(s, x.data() + 12); }

 private:
  FlowSystem system_;
  double s0_, s1_, step_;
  std::vector<State> checkpoints_;
};

Mat frame_of(const State& x) {
  Eigen::Vector3d t(x[3], x[4], x[5]), n(x[6], x[7], x[8]);
  t.normalize();
  n -= n.dot(t) * t;
  n.normalize();
  Mat f(3, 3);
  f.col(0) = t;
  f.col(1) = n;
  f.col(2) = t.cross(n);
  return f;
}

void check_frame(const FrameInit& init) {
  if (init.point.size() != 3 || init.frame.rows() != 3 || init.frame.cols() != 3)
    throw InputError("Frenet integration works in dimension 3");
  const double defect = (init.frame.transpose() * init.frame - Mat::Identity(3, 3)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw PreconditionError("initial frame is not orthonormal");
  if (init.frame.determinant() < 0.0) throw PreconditionError("initial frame is negatively oriented");
}

IntegratedCurve integrate_flow(FlowSystem system, const FrameInit& init, const State& aux0,
                               double s0, double s1, std::size_t samples,
                               const IntegratorOptions& options, std::string_view metric_name,
                               bool allow_zero_kappa) {
  check_frame(init);
  if (!(s0 < s1)) throw InputError("integration interval is empty");
  if (samples < 2) throw InputError("integration needs at least two output samples");
  State x0(12 + aux0.size());
  for (int i = 0; i < 3; ++i) {
    x0[i] = init.point[i];
    x0[3 + i] = init.frame(i, 0);
    x0[6 + i] = init.frame(i, 1);
    x0[9 + i] = init.frame(i, 2);
  }
  std::copy(aux0.begin(), aux0.end(), x0.begin() + 12);
  system.aux_size = aux0.size();
  auto flow = std::make_shared<const Flow>(std::move(system), x0, s0, s1, options,
                                           allow_zero_kappa);

  AnalyticCurve c;
  c.max_order = 2;
  c.lo = s0;
  c.hi = s1;
  c.eval = [flow](double s, int k) -> Vec {
    const State x = flow->at(s);
    if (k == 0) return vec3(x[0], x[1], x[2]);
    const Mat f = frame_of(x);
    if (k == 1) return f.col(0);
    if (k == 2) return flow->kappa(s, x) * f.col(1);
    throw InputError("integrated curve: derivative order above 2 requested");
  };

  IntegratedCurve out;
  out.curve = make_analytic_curve(shared_metric(metric_name), std::move(c), s0, s1, samples, true);
  for (double s : out.curve.grid) {
    const State x = flow->at(s);
    out.frames.push_back(frame_of(x));
    out.kappa.push_back(flow->kappa(s, x));
    out.tau.push_back(flow->tau(s, x));
  }
  return out;
}

}  // namespace

std::vector<std::string> builtin_curve_names() {
  return {"log_spiral", "cone_loxodrome", "circle_origin", "hyperbolic_vertical_line",
          "rectifying", "helix",          "line_origin"};
}

CurveSamples builtin_curve(std::string_view name, std::span<const double> params,
                           std::size_t samples) {
  if (samples < 2) throw InputError("builtin curves need at least two samples");
  if (name == "log_spiral") return log_spiral(params, samples);
  if (name == "cone_loxodrome") return cone_loxodrome(params, samples);
  if (name == "circle_origin") return circle_origin(params, samples);
  if (name == "hyperbolic_vertical_line") return hyperbolic_vertical_line(params, samples);
  if (name == "rectifying") return rectifying(params, samples);
  if (name == "helix") return helix(params, samples);
  if (name == "line_origin") return line_origin(params, samples);
  throw InputError("unknown curve '" + std::string(name) + "'");
}

IntegratedCurve frenet_integrate(const std::function<double(double)>& kappa,
                                 const std::function<double(double)>& tau, const FrameInit& init,
                                 double s0, double s1, std::size_t samples,
                                 const IntegratorOptions& options) {
  FlowSystem system;
  system.kappa = [kappa](double s, const double*) { return kappa(s); };
  system.tau = [tau](double s, const double*) { return tau(s); };
  return integrate_flow(std::move(system), init, {}, s0, s1, samples, options, "euclidean", false);
}

ScalarProfile affine_profile(double slope, double intercept) {
  ScalarProfile p;
  p.name = "affine";
  p.params = {slope, intercept};
  p.eval = [slope, intercept](double s, int k) {
    if (k == 0) return slope * s + intercept;
    return k == 1 ? slope : 0.0;
  };
  return p;
}

ScalarProfile sqrt_quadratic_profile(double a, double b, double c) {
  ScalarProfile p;
  p.name = "sqrt_quadratic";
  p.params = {a, b, c};
  p.eval = [a, b, c](double s, int k) {
    const double q = (a * s + b) * s + c;
    if (!(q > 0.0)) throw DomainError("sqrt_quadratic profile: a s² + b s + c ≤ 0 at " + at_s(s));
    const double f = std::sqrt(q);
    const double d1 = (2.0 * a * s + b) / (2.0 * f);
    const double d2 = (a - d1 * d1) / f;
    switch (k) {
      case 0: return f;
      case 1: return d1;
      case 2: return d2;
      case 3: return -3.0 * d1 * d2 / f;
      default: throw InputError("profile derivatives are available up to order 3");
    }
  };
  return p;
}

ScalarProfile power_profile(double coeff, double exponent) {
  ScalarProfile p;
  p.name = "power";
  p.params = {coeff, exponent};
  p.eval = [coeff, exponent](double s, int k) {
    if (!(s > 0.0)) throw DomainError("power profile is defined for s > 0, got " + at_s(s));
    double c = coeff;
    for (int j = 0; j < k; ++j) c *= exponent - j;
    return c * std::pow(s, exponent - k);
  };
  return p;
}

ScalarProfile constant_profile(double value) {
  ScalarProfile p = affine_profile(0.0, value);
  p.name = "constant";
  p.params = {value};
  return p;
}

ScalarProfile make_profile(std::string_view name, std::span<const double> params) {
  if (name == "constant") {
    if (params.size() != 1) throw InputError("constant profile takes [value]");
    return constant_profile(params[0]);
  }
  if (name == "power") {
    if (params.size() != 2) throw InputError("power profile takes [coeff, exponent]");
    return power_profile(params[0], params[1]);
  }
  if (name == "affine") {
    if (params.size() != 2) throw InputError("affine profile takes [slope, intercept]");
    return affine_profile(params[0], params[1]);
  }
  if (name == "sqrt_quadratic") {
    if (params.size() != 3) throw InputError("sqrt_quadratic profile takes [a, b, c]");
    return sqrt_quadratic_profile(params[0], params[1], params[2]);
  }
  throw InputError("unknown profile '" + std::string(name) + "'");
}

SlantSynthesis synthesize_slant_from_phi(const SlantSynthesisConfig& config) {
  const ScalarProfile phi = config.phi;
  if (!phi.eval) throw InputError("slant synthesis needs a distance function");
  const double c = std::cos(config.theta);
  if (std::abs(c) < 1e-12)
    throw PreconditionError("cos θ = 0 is the rectifying case; κ = ((φφ')' − 1)/(cos θ φ) is undefined");
  if (!(config.s0 < config.s1)) throw InputError("integration interval is empty");

  // (φφ')' and its derivative.
  const auto pp1 = [phi](double s) { return phi(s, 1) * phi(s, 1) + phi(s) * phi(s, 2); };
  const auto pp2 = [phi](double s) { return 3.0 * phi(s, 1) * phi(s, 2) + phi(s) * phi(s, 3); };
  const auto kappa = [=](double s) { return (pp1(s) - 1.0) / (c * phi(s)); };
  const auto F = [=](double s) { return (c * c + pp1(s) - 1.0) * phi(s, 1); };
  const auto dF = [=](double s) { return pp2(s) * phi(s, 1) + (c * c + pp1(s) - 1.0) * phi(s, 2); };
  const auto budget = [=](double s) {
    const double f = phi(s), g = f * phi(s, 1);
    return f * f - g * g - c * c * f * f;
  };

  const std::vector<double> grid = linspace(config.s0, config.s1, std::max<std::size_t>(config.samples, 2));
  double max_slope = 0.0;
  for (double s : grid) {
    if (!(phi(s) > 0.0)) throw PreconditionError("φ must be positive; φ ≤ 0 at " + at_s(s));
    if (budget(s) < -1e-12)
      throw PreconditionError("g² = φ² − (φφ')² − cos²θ φ² is negative at " + at_s(s) +
                              " (value " + num(budget(s)) + ")");
    if (!(kappa(s) > 0.0))
      throw PreconditionError("κ = ((φφ')' − 1)/(cos θ φ) is not positive at " + at_s(s) +
                              " (value " + num(kappa(s)) + ")");
    max_slope = std::max(max_slope, std::abs(phi(s, 1)));
  }
  if (max_slope < 1e-12)
    throw PreconditionError("constant φ describes a circle centered at the origin; use circle_origin");

  SlantSynthesis out;
  const double s0 = config.s0;
  out.g0 = std::sqrt(std::max(0.0, budget(s0)));
  out.tau0_compatible = out.g0 > 0.0 ? F(s0) / (c * out.g0) : 0.0;
  if (out.g0 == 0.0 && std::abs(F(s0)) > 1e-12)
    out.notes.push_back("g(s0) = 0 but F(s0) ≠ 0: no torsion is compatible with |γ| = φ");
  out.tau0 = config.tau0.value_or(out.tau0_compatible);
  if (config.tau0 && std::abs(*config.tau0 - out.tau0_compatible) > 1e-12)
    out.notes.push_back("supplied τ0 = " + num(*config.tau0) +
                        " differs from the value compatible with |γ(s0)| = φ(s0), τ0 = " +
                        num(out.tau0_compatible));

  FlowSystem system;
  system.kappa = [kappa](double s, const double*) { return kappa(s); };
  system.tau = [](double, const double* aux) { return aux[0]; };
  system.aux_rhs = [=](double s, const double* aux, double* daux) {
    const double t = aux[0];
    if (t == 0.0) {
      daux[0] = 0.0;
      return;
    }
    const double f = F(s);
    if (std::abs(f) < 1e-12)
      throw NumericalError("F(s) vanishes at " + at_s(s) + "; the torsion equation is singular");
    daux[0] = t * (dF(s) + c * c * phi(s) * t * t) / f;
  };

  FrameInit init;
  init.point = vec3(phi(s0) * phi(s0, 1), c * phi(s0), out.g0);
  out.result = integrate_flow(std::move(system), init, {out.tau0}, config.s0, config.s1,
                              config.samples, config.integrator, "punctured_euclidean", false);

  const auto& curve = out.result.curve;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec& p = curve.points[i];
    const double r = p.norm();
    out.max_cos_defect = std::max(out.max_cos_defect,
                                  std::abs(p.dot(out.result.frames[i].col(1)) / r - c));
    out.max_phi_defect = std::max(out.max_phi_defect, std::abs(r - phi(curve.grid[i])));
  }
  out.verified = out.max_cos_defect < config.verify_tol;
  return out;
}

ConcircularSynthesis synthesize_concircular(const ConcircularSynthesisConfig& config) {
  const ScalarProfile f3 = config.f3;
  if (!f3.eval) throw InputError("concircular synthesis needs f3");
  const double theta = config.theta, rho = config.rho;
  if (std::abs(theta) < 1e-12) throw PreconditionError("θ must be nonzero: τ = −f3'/θ");
  if (config.f1_0 == 0.0) throw PreconditionError("f1(s0) must be nonzero");

  const auto tau = [f3, theta](double s) { return -f3(s, 1) / theta; };
  bool constant_f3 = true;
  for (double s : linspace(config.s0, config.s1, std::max<std::size_t>(config.samples, 2))) {
    if (f3(s) == 0.0) throw PreconditionError("f3 vanishes at " + at_s(s));
    if (f3(s, 1) != 0.0) constant_f3 = false;
  }

  FlowSystem system;
  system.tau = [tau](double s, const double*) { return tau(s); };
  system.kappa = [tau, f3](double s, const double* aux) {
    if (std::abs(aux[0]) < 1e-12)
      throw NumericalError("f1 reaches zero at " + at_s(s));
    return tau(s) * f3(s) / aux[0];
  };
  system.aux_rhs = [tau, f3, theta, rho](double s, const double* aux, double* daux) {
    if (std::abs(aux[0]) < 1e-12) throw NumericalError("f1 reaches zero at " + at_s(s));
    daux[0] = theta * tau(s) * f3(s) / aux[0] + rho;
  };

  ConcircularSynthesis out;
  out.degenerate = constant_f3;
  if (constant_f3)
    out.notes.push_back(
        "f3 is constant: τ ≡ 0 and κ ≡ 0, the output is a straight line and the concircular ODE "
        "does not apply");

  // Integrate f1 alongside the frame; f1 is recovered from κ = τ f3/f1.
  out.result = integrate_flow(std::move(system), config.init, {config.f1_0}, config.s0, config.s1,
                              config.samples, config.integrator, "euclidean", constant_f3);

  const Mat& e = config.init.frame;
  out.anchor = config.f1_0 * e.col(0) + theta * e.col(1) + f3(config.s0) * e.col(2) -
               rho * config.init.point;
  std::vector<double> params{rho, out.anchor[0], out.anchor[1], out.anchor[2]};
  out.field = builtin_field("concircular_affine", out.result.curve.metric, params);

  const auto& curve = out.result.curve;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec v = out.field.at(curve.points[i]);
    const Mat& f = out.result.frames[i];
    out.f1.push_back(v.dot(f.col(0)));
    out.max_theta_defect = std::max(out.max_theta_defect, std::abs(v.dot(f.col(1)) - theta));
  }
  out.verified = out.max_theta_defect < config.verify_tol;
  return out;
}

}  // namespace torq
