#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "torq/curve.hpp"
#include "torq/manifold.hpp"

namespace torq::testing {

/// Sum of a linear drift and sinusoids a·sin(ωt + φ), with closed-form
/// derivatives of every order.
struct TrigCurve {
  Vec drift;
  std::vector<Vec> amp;
  std::vector<double> omega;
  std::vector<double> phase;
  Vec offset;

  Vec operator()(double t, int k) const {
    Vec out = Vec::Zero(drift.size());
    if (k == 0) out = offset + t * drift;
    if (k == 1) out = drift;
    for (std::size_t i = 0; i < amp.size(); ++i)
      out += std::pow(omega[i], k) * std::sin(omega[i] * t + phase[i] + k * M_PI / 2.0) * amp[i];
    return out;
  }
};

inline CurveSamples trig_curve(std::shared_ptr<const ChartMetric> metric, TrigCurve c, double a,
                               double b, std::size_t samples, const Mat* rotation = nullptr) {
  AnalyticCurve ac;
  ac.max_order = 6;
  if (rotation) {
    const Mat q = *rotation;
    ac.eval = [c, q](double t, int k) -> Vec { return q * c(t, k); };
  } else {
    ac.eval = [c](double t, int k) { return c(t, k); };
  }
  return reparametrize_arclength(make_analytic_curve(metric, ac, a, b, samples, false), samples);
}

/// Helix of radius 1 and random pitch plus small random sinusoids.
inline TrigCurve random_euclidean_trig(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pitch(0.5, 1.0), u(-1.0, 1.0), w(0.5, 2.0), ph(0.0, 2 * M_PI);
  TrigCurve c;
  c.drift = Vec::Zero(3);
  c.drift[2] = pitch(rng);
  c.offset = Vec::Zero(3);
  c.offset[0] = 2.0;
  c.amp = {Vec(Vec::Unit(3, 0)), Vec(Vec::Unit(3, 1))};
  c.omega = {1.0, 1.0};
  c.phase = {M_PI / 2.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    Vec a(3);
    a << u(rng), u(rng), u(rng);
    c.amp.push_back(0.02 * a);
    c.omega.push_back(w(rng));
    c.phase.push_back(ph(rng));
  }
  return c;
}

/// Horizontal circle at height ~1.5 with an upward drift in the upper half
/// space, plus small random sinusoids.
inline TrigCurve random_hyperbolic_trig(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.8, 1.5), u(-1.0, 1.0), w(0.5, 2.0),
      ph(0.0, 2 * M_PI);
  const double r = radius(rng);
  TrigCurve c;
  c.drift = Vec::Zero(3);
  c.drift[2] = 0.2;
  c.offset = Vec::Zero(3);
  c.offset[2] = 1.5;
  c.amp = {r * Vec(Vec::Unit(3, 0)), r * Vec(Vec::Unit(3, 1))};
  c.omega = {1.0, 1.0};
  c.phase = {M_PI / 2.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    Vec a(3);
    a << u(rng), u(rng), u(rng);
    c.amp.push_back(0.03 * a);
    c.omega.push_back(w(rng));
    c.phase.push_back(ph(rng));
  }
  return c;
}

/// Haar-ish random rotation from the QR factorization of a Gaussian matrix.
inline Mat random_rotation(std::mt19937_64& rng, bool proper = true) {
  std::normal_distribution<double> n;
  Mat a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = n(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  if ((q.determinant() > 0) != proper) q.col(0) *= -1.0;
  return q;
}

}  // namespace torq::testing
