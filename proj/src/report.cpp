#include "torq/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

namespace torq {
namespace {

json stats(const std::vector<double>& v) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  std::size_t n = 0;
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
    ++n;
  }
  if (n == 0) return nullptr;
  return {{"min", lo}, {"max", hi}, {"mean", sum / static_cast<double>(n)}};
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t i) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(i < r.size() ? r[i] : std::nan(""));
  return out;
}

json coefficient_stats(const std::vector<std::vector<double>>& rows, const std::string& prefix) {
  json out = json::object();
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < n; ++i) out[prefix + std::to_string(i + 1)] = stats(column(rows, i));
  return out;
}

json labels(const std::vector<FieldClass>& classes) {
  json out = json::array();
  for (auto c : classes) out.push_back(to_string(c));
  return out;
}

}  // namespace

void Report::add(std::string name, double value, double tol, bool reduced) {
  residuals.push_back({std::move(name), value, tol, reduced});
}

void Report::add(const std::vector<Residual>& lines, const std::string& prefix) {
  for (const auto& r : lines) residuals.push_back({prefix + r.name, r.value, r.tol, r.reduced});
}

bool Report::passed() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const Residual& r) { return std::isfinite(r.value) && r.passed(); });
}

json Report::payload() const {
  json out;
  out["input"] = input;
  out["frenet"] = frenet;
  out["field_classification"] = field_classification;
  out["slant"] = slant;
  out["torqued"] = torqued;
  out["classification_branch"] = classification_branch;
  json rs = json::array();
  for (const auto& r : residuals) rs.push_back(torq::to_json(r));
  out["residuals"] = std::move(rs);
  out["passed"] = passed();
  out["diagnostics"] = diagnostics;
  return out;
}

json Report::to_json() const {
  json out = payload();
  out["metadata"] = metadata;
  return out;
}

json to_json(const Residual& r) {
  json out = {{"name", r.name}, {"value", r.value}, {"tol", r.tol}, {"passed", r.passed()}};
  if (r.reduced) out["reduced"] = true;
  return out;
}

json frenet_json(const FrenetData& frenet) {
  json out;
  out["metric"] = frenet.metric ? frenet.metric->name : "";
  out["dim"] = frenet.dim;
  out["order"] = frenet.order;
  out["frame_size"] = frenet.frame_size;
  out["samples"] = frenet.size();
  if (frenet.size() > 0) out["s_range"] = {frenet.s.front(), frenet.s.back()};
  json k = json::object();
  for (int i = 1; i < frenet.frame_size; ++i) {
    std::vector<double> v(frenet.size());
    for (std::size_t j = 0; j < frenet.size(); ++j) v[j] = frenet.kappa(j, i);
    k["kappa" + std::to_string(i)] = stats(v);
  }
  out["curvatures"] = std::move(k);
  out["orthonormality_defect"] = frame_orthonormality_defect(frenet);
  return out;
}

json field_json(const TorseFormingReport& report) {
  json out;
  out["label"] = to_string(report.label);
  out["passing"] = labels(report.passing);
  out["proper"] = report.proper;
  out["samples"] = report.points.size();
  out["tol"] = report.tol;
  out["rho"] = stats(report.rho);
  out["max_residual"] = report.max_residual;
  out["max_abs_rho"] = report.max_abs_rho;
  out["max_omega_norm"] = report.max_omega_norm;
  out["max_abs_VW"] = report.max_abs_VW;
  out["max_anti_defect"] = report.max_anti_defect;
  return out;
}

json slant_json(const SlantReport& report) {
  json out;
  out["axis_label"] = to_string(report.axis_label);
  out["tangential_angle"] = report.tangential_angle;
  out["cos_theta"] = report.cos_theta;
  out["theta_hat"] = report.theta_hat;
  out["constancy_residual"] = report.constancy_residual;
  out["is_slant_helix"] = report.is_slant_helix;
  out["case"] = to_string(report.slant_case);
  out["parallel_defect"] = report.parallel_defect;
  out["geodesic"] = report.geodesic;
  if (report.slant_case == SlantCase::normal_parallel)
    out["normal_case_residual"] = report.normal_case_residual;
  out["unit_decomposition_defect"] = report.unit_decomposition_defect;
  out["coefficients"] = coefficient_stats(report.coeffs, "f");
  out["rho"] = stats(report.rho);
  out["tol"] = report.tol;
  return out;
}

json system_json(const SystemCheck& check) {
  json out;
  out["applicable"] = check.applicable;
  out["variant"] = check.variant;
  json lines = json::array();
  for (const auto& r : check.lines) lines.push_back(to_json(r));
  out["lines"] = std::move(lines);
  out["notes"] = check.notes;
  return out;
}

json euclidean_json(const EuclideanSlantReport& report) {
  json out;
  out["branch"] = to_string(report.branch);
  json passing = json::array();
  for (auto b : report.passing) passing.push_back(to_string(b));
  out["passing"] = std::move(passing);
  out["cos_theta"] = report.cos_theta;
  out["constancy_residual"] = report.constancy_residual;
  out["phi"] = stats(report.phi);
  out["circle_origin"] = {{"phi_spread", report.phi_spread},
                          {"plane_defect", report.plane_defect},
                          {"cos_minus_one", report.cos_minus_one}};
  out["log_spiral"] = {{"max_abs_tau", report.max_abs_tau},
                       {"min_abs_dphi", report.min_abs_dphi},
                       {"slope", report.slope},
                       {"intercept", report.intercept},
                       {"affine_fit_residual", report.affine_fit_residual},
                       {"slope_defect", report.slope_defect},
                       {"kappa_law_residual", report.kappa_law_residual}};
  out["rectifying"] = {{"max_abs_gamma_N", report.max_abs_gamma_N}};
  json generic = json::array();
  for (const auto& r : report.generic_residuals) generic.push_back(to_json(r));
  out["generic"] = std::move(generic);
  out["tol"] = report.options.tol;
  out["derivative_tol"] = report.options.derivative_tol;
  out["diagnostics"] = report.diagnostics;
  return out;
}

json torqued_json(const TorquedReport& report) {
  json out;
  out["field_label"] = to_string(report.field_label);
  out["concircular"] = report.concircular;
  out["theta_hat"] = report.theta_hat;
  out["constancy_residual"] = report.constancy_residual;
  out["is_torqued_curve"] = report.is_torqued_curve;
  out["case"] = to_string(report.torqued_case);
  out["geodesic"] = report.geodesic;
  if (report.torqued_case == TorquedCase::normal_parallel) {
    out["normal_case_residual"] = report.normal_case_residual;
    out["max_abs_kappa2"] = report.max_abs_kappa2;
  }
  out["orthogonality_residual"] = report.orthogonality_residual;
  out["v_decomposition_defect"] = report.v_decomposition_defect;
  out["w_decomposition_defect"] = report.w_decomposition_defect;
  out["f"] = coefficient_stats(report.f, "f");
  out["g"] = coefficient_stats(report.g, "g");
  out["rho"] = stats(report.rho);
  out["tol"] = report.tol;
  return out;
}

json default_metadata() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {{"tool", "torq"}, {"version", "0.1.0"}, {"timestamp", stamp}};
}

}  // namespace torq
