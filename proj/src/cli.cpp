#include "torq/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "torq/error.hpp"
#include "torq/example_suite.hpp"
#include "torq/io.hpp"
#include "torq/report.hpp"
#include "torq/synthesis.hpp"

namespace torq {
namespace {

constexpr double kDefaultTol = 1e-6;
constexpr double kOrthonormalityTol = 1e-8;

struct Options {
  std::string curve;
  std::vector<double> curve_params;
  std::string metric;
  std::vector<double> metric_params;
  int dim = 3;
  std::string field;
  std::vector<double> field_params;
  std::optional<double> tol;
  double derivative_tol = 1e-4;
  std::size_t samples = 201;
  std::size_t points = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string plot;
  std::string format = "json";
  bool serial = false;

  std::string kind = "slant";
  std::string phi = "sqrt_quadratic";
  std::vector<double> phi_params{0.5, 0.0, 4.0};
  std::string f3 = "affine";
  std::vector<double> f3_params{-0.25, 2.0};
  std::string kappa = "constant";
  std::vector<double> kappa_params{1.0};
  std::string tau = "constant";
  std::vector<double> tau_params{0.0};
  std::optional<double> theta;
  std::optional<double> tau0;
  double rho = 1.0;
  double f1_0 = 1.0;
  std::optional<double> s0;
  std::optional<double> s1;

  ExecPolicy policy() const { return serial ? ExecPolicy::serial : ExecPolicy::parallel; }
  double tolerance() const { return tol.value_or(kDefaultTol); }
};

/// Serialized output of a subcommand.
struct Outcome {
  Report report;
  std::function<void(std::ostream&)> csv;
  std::function<void(std::ostream&)> plot;
};

bool is_csv(const std::string& s) {
  return s.size() > 4 && s.compare(s.size() - 4, 4, ".csv") == 0;
}

std::shared_ptr<const ChartMetric> make_metric(const std::string& name, int dim,
                                               const std::vector<double>& params) {
  if (dim < 2) throw InputError("dimension must be at least 2");
  return std::make_shared<const ChartMetric>(builtin_metric(name, dim, params));
}

std::string default_metric_for(const std::string& field) {
  if (field == "radial_unit") return "punctured_euclidean";
  if (field == "hyperbolic_em") return "hyperbolic_upper_half";
  if (field == "twisted_torqued") return "warped_interval_product";
  return "euclidean";
}

CurveSamples load_curve(const Options& o) {
  if (o.curve.empty()) throw InputError("--curve is required");
  if (is_csv(o.curve)) {
    if (!o.curve_params.empty()) throw InputError("--curve-params applies to built-in curves only");
    CurveTable table = read_curve_csv(o.curve);
    if (table.t.size() < 8) throw InputError(o.curve + ": at least 8 samples are required");
    const int dim = static_cast<int>(table.points.front().size());
    const auto metric = make_metric(o.metric.empty() ? "euclidean" : o.metric, dim, o.metric_params);
    for (std::size_t i = 0; i < table.points.size(); ++i)
      if (!metric->contains(table.points[i])) {
        std::ostringstream os;
        os << o.curve << ": sample " << i << " (t = " << table.t[i] << ") at ("
           << table.points[i].transpose() << ") lies outside the " << metric->name << " chart";
        throw DomainError(os.str());
      }
    const auto raw = make_sampled_curve(metric, std::move(table.t), std::move(table.points));
    return reparametrize_arclength(raw, o.samples);
  }
  if (!o.metric_params.empty())
    throw InputError("--metric-params applies to CSV curves; built-in curves fix their metric");
  CurveSamples c = builtin_curve(o.curve, o.curve_params, o.samples);
  if (!o.metric.empty() && o.metric != c.metric->name)
    throw InputError("built-in curve '" + o.curve + "' lives on " + c.metric->name + ", not " +
                     o.metric);
  return c;
}

std::optional<FieldSpec> load_field(const Options& o, std::shared_ptr<const ChartMetric> metric) {
  if (o.field.empty()) return std::nullopt;
  if (is_csv(o.field)) {
    FieldTable table = read_field_csv(o.field);
    if (static_cast<int>(table.points.front().size()) != metric->dim)
      throw InputError(o.field + ": field dimension does not match the metric");
    return field_from_samples(metric, std::move(table.points), std::move(table.vectors));
  }
  return builtin_field(o.field, metric, o.field_params);
}

json input_block(const std::string& command, const Options& o, const ChartMetric* metric) {
  json in;
  in["command"] = command;
  if (!o.curve.empty()) {
    in["curve"] = o.curve;
    in["curve_params"] = o.curve_params;
  }
  if (metric) {
    in["metric"] = metric->name;
    in["metric_params"] = metric->params;
    in["dim"] = metric->dim;
  }
  if (!o.field.empty()) {
    in["field"] = o.field;
    in["field_params"] = o.field_params;
  }
  in["tol"] = o.tolerance();
  in["derivative_tol"] = o.derivative_tol;
  in["samples"] = o.samples;
  return in;
}

FrenetData frenet_block(Report& r, const CurveSamples& curve, const Options& o) {
  FrenetOptions fo;
  fo.policy = o.policy();
  FrenetData fr = frenet_apparatus(curve, fo);
  r.frenet = frenet_json(fr);
  const SpecialCurve sp = detect_special(fr, o.tolerance());
  json special = {{"geodesic", sp.geodesic}, {"circle", sp.circle}, {"general_helix", sp.general_helix}};
  if (sp.circle) special["circle_radius"] = sp.circle_radius;
  if (sp.general_helix) special["helix_ratio"] = sp.helix_ratio;
  r.frenet["special"] = std::move(special);
  r.add("frenet: frame orthonormality", frame_orthonormality_defect(fr), kOrthonormalityTol);
  return fr;
}

TorseFormingReport field_block(Report& r, const FieldSpec& field, const FrenetData& fr,
                               const Options& o) {
  auto rep = classify_field(field, fr.points, default_field_tolerance(field), o.policy());
  r.field_classification = field_json(rep);
  return rep;
}

SlantReport slant_block(Report& r, const FrenetData& fr, const FieldSpec& axis, const Options& o,
                        bool require) {
  const double tol = o.tolerance();
  SlantReport sr = slant_report(fr, axis, tol, o.policy());
  r.slant = slant_json(sr);
  for (const auto& d : sr.diagnostics) r.diagnostics.push_back("slant: " + d);
  if (require) r.add("slant: constancy of <V, N2>", sr.constancy_residual, tol);
  if (!sr.is_slant_helix || sr.axis_label != FieldClass::anti_torqued) return sr;

  if (sr.slant_case == SlantCase::normal_parallel)
    r.add("slant: rho + cos theta kappa1", sr.normal_case_residual, tol);
  if (sr.slant_case == SlantCase::generic) {
    const SystemCheck sys = system_residuals_anti(fr, sr, o.derivative_tol);
    r.slant["system"] = system_json(sys);
    if (sys.applicable) r.add(sys.lines, "slant: ");
    if (std::abs(sr.cos_theta) < tol && fr.order >= 3) {
      try {
        const RatioLaw law = ratio_law_check(fr, sr, o.derivative_tol);
        r.slant["ratio_law"] = {{"c_hat", law.c_hat}, {"residual", law.residual}, {"tol", law.tol}};
        r.add("slant: ratio law", law.residual, law.tol);
      } catch (const PreconditionError& e) {
        r.diagnostics.push_back(std::string("slant: ratio law not evaluated: ") + e.what());
      }
    }
  }
  const bool radial = axis.name == "radial_unit" && fr.dim == 3 && fr.order >= 2;
  if (radial) {
    const auto e = classify_euclidean_slant(fr, {tol, o.derivative_tol});
    r.classification_branch = euclidean_json(e);
    if (e.branch == EuclideanBranch::generic) r.add(e.generic_residuals, "branch: ");
  }
  return sr;
}

void torqued_block(Report& r, const FrenetData& fr, const FieldSpec& field, const Options& o,
                   bool require) {
  const double tol = o.tolerance();
  const TorquedReport tr = torqued_report(fr, field, tol, o.policy());
  r.torqued = torqued_json(tr);
  for (const auto& d : tr.diagnostics) r.diagnostics.push_back("torqued: " + d);
  if (require) r.add("torqued: constancy of <V, N2>", tr.constancy_residual, tol);
  if (!tr.is_torqued_curve || tr.torqued_case == TorquedCase::tangent_parallel) return;

  if (tr.torqued_case == TorquedCase::normal_parallel) {
    r.add("torqued: kappa1 theta + rho", tr.normal_case_residual, tol);
    r.add("torqued: kappa2", tr.max_abs_kappa2, tol);
  }
  const SystemCheck sys = system_residuals_torqued(fr, tr, o.derivative_tol);
  r.torqued["system"] = system_json(sys);
  r.add(sys.lines, "torqued: ");
  if (tr.concircular && fr.order >= 3 && tr.torqued_case == TorquedCase::generic) {
    try {
      const double ode = concircular_ode_residual(fr, tr.rho, tr.theta_hat);
      r.torqued["concircular_ode_residual"] = ode;
      r.add("torqued: concircular ODE", ode, o.derivative_tol);
    } catch (const PreconditionError& e) {
      r.diagnostics.push_back(std::string("torqued: concircular ODE not evaluated: ") + e.what());
    }
  }
}

bool torqued_like(FieldClass c) { return c == FieldClass::torqued || c == FieldClass::concircular; }

void attach_curve_outputs(Outcome& oc, const FrenetData& fr, std::vector<double> angle) {
  oc.csv = [fr](std::ostream& os) { write_frenet_csv(os, fr); };
  oc.plot = [fr, angle = std::move(angle)](std::ostream& os) { write_plot_csv(os, fr, angle); };
}

Outcome run_analyze(const Options& o) {
  Outcome oc;
  const CurveSamples curve = load_curve(o);
  oc.report.input = input_block("analyze", o, curve.metric.get());
  const FrenetData fr = frenet_block(oc.report, curve, o);
  std::vector<double> angle;
  if (auto field = load_field(o, curve.metric)) {
    const auto fit = field_block(oc.report, *field, fr, o);
    if (fit.label != FieldClass::not_torse_forming) {
      angle = slant_block(oc.report, fr, *field, o, false).angle_samples;
      if (torqued_like(fit.label)) torqued_block(oc.report, fr, *field, o, false);
    } else {
      oc.report.diagnostics.push_back("field is not torse-forming along the curve");
    }
  }
  attach_curve_outputs(oc, fr, std::move(angle));
  return oc;
}

Outcome run_slant_check(Options o) {
  Outcome oc;
  const CurveSamples curve = load_curve(o);
  if (o.field.empty()) {
    const std::string& m = curve.metric->name;
    if (m == "punctured_euclidean") o.field = "radial_unit";
    else if (m == "hyperbolic_upper_half") o.field = "hyperbolic_em";
    else throw InputError("--field is required on " + m);
  }
  oc.report.input = input_block("slant-check", o, curve.metric.get());
  const FrenetData fr = frenet_block(oc.report, curve, o);
  const FieldSpec axis = *load_field(o, curve.metric);
  field_block(oc.report, axis, fr, o);
  const SlantReport sr = slant_block(oc.report, fr, axis, o, true);
  attach_curve_outputs(oc, fr, sr.angle_samples);
  return oc;
}

Outcome run_torqued_check(const Options& o) {
  Outcome oc;
  if (o.field.empty()) throw InputError("--field is required");
  const CurveSamples curve = load_curve(o);
  oc.report.input = input_block("torqued-check", o, curve.metric.get());
  const FrenetData fr = frenet_block(oc.report, curve, o);
  const FieldSpec field = *load_field(o, curve.metric);
  field_block(oc.report, field, fr, o);
  torqued_block(oc.report, fr, field, o, true);
  attach_curve_outputs(oc, fr, angle_function(fr, field));
  return oc;
}

std::vector<Vec> sample_points(const ChartMetric& metric, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.25, 3.0), t(-1.0, 1.0);
  std::vector<Vec> out;
  const int m = metric.dim;
  std::size_t attempts = 0;
  while (out.size() < n) {
    if (++attempts > 100 * n + 100) throw InputError("could not sample points inside the chart domain");
    Vec p(m);
    for (int i = 0; i < m; ++i) p[i] = u(rng);
    if (metric.name == "hyperbolic_upper_half") p[m - 1] = pos(rng);
    if (metric.name == "warped_interval_product") p[0] = t(rng);
    if (metric.name == "punctured_euclidean" && p.norm() < 0.25) continue;
    if (!metric.contains(p)) continue;
    out.push_back(p);
  }
  return out;
}

Outcome run_classify_field(const Options& o) {
  Outcome oc;
  if (o.field.empty()) throw InputError("--field is required");
  std::shared_ptr<const ChartMetric> metric;
  std::vector<Vec> points;
  std::optional<FieldSpec> field;
  if (is_csv(o.field)) {
    FieldTable table = read_field_csv(o.field);
    metric = make_metric(o.metric.empty() ? "euclidean" : o.metric,
                         static_cast<int>(table.points.front().size()), o.metric_params);
    points = table.points;
    field = field_from_samples(metric, std::move(table.points), std::move(table.vectors));
  } else {
    metric = make_metric(o.metric.empty() ? default_metric_for(o.field) : o.metric, o.dim,
                         o.metric_params);
    field = builtin_field(o.field, metric, o.field_params);
    points = sample_points(*metric, o.points, o.seed);
  }
  const double tol = o.tol.value_or(default_field_tolerance(*field));
  Report& r = oc.report;
  r.input = input_block("classify-field", o, metric.get());
  r.input["tol"] = tol;
  r.input["points"] = points.size();
  if (!is_csv(o.field)) r.input["seed"] = o.seed;

  const auto rep = classify_field(*field, points, tol, o.policy());
  r.field_classification = field_json(rep);
  r.add("field: torse-forming fit", rep.max_residual, tol);
  if (rep.label == FieldClass::anti_torqued) {
    double norm_defect = 0.0, geodesic_defect = 0.0;
    for (const Vec& p : points) {
      const auto [a, b] = unit_geodesic_defect(*field, p);
      norm_defect = std::max(norm_defect, a);
      geodesic_defect = std::max(geodesic_defect, b);
    }
    r.field_classification["unit_defect"] = norm_defect;
    r.field_classification["geodesic_defect"] = geodesic_defect;
    r.add("field: |<V,V> - 1|", norm_defect, tol);
    r.add("field: |nabla_V V|", geodesic_defect, tol);
  }
  oc.csv = [rep](std::ostream& os) {
    const auto precision = os.precision(17);
    const Eigen::Index m = rep.points.empty() ? 0 : rep.points.front().size();
    for (Eigen::Index i = 1; i <= m; ++i) os << 'x' << i << ',';
    os << "rho";
    for (Eigen::Index i = 1; i <= m; ++i) os << ",W" << i;
    os << ",residual\n";
    for (std::size_t j = 0; j < rep.points.size(); ++j) {
      for (Eigen::Index i = 0; i < m; ++i) os << rep.points[j][i] << ',';
      os << rep.rho[j];
      for (Eigen::Index i = 0; i < m; ++i) os << ',' << rep.W[j][i];
      os << ',' << rep.residual[j] << '\n';
    }
    os.precision(precision);
  };
  return oc;
}

Outcome run_synthesize(const Options& o) {
  Outcome oc;
  Report& r = oc.report;
  r.input = input_block("synthesize", o, nullptr);
  r.input.erase("samples");
  r.input["kind"] = o.kind;
  r.input["samples"] = o.samples;
  IntegratedCurve result;
  std::optional<FieldSpec> field;

  if (o.kind == "slant") {
    SlantSynthesisConfig c;
    c.phi = make_profile(o.phi, o.phi_params);
    c.theta = o.theta.value_or(2.0 * std::numbers::pi / 3.0);
    c.s0 = o.s0.value_or(1.0);
    c.s1 = o.s1.value_or(3.0);
    c.tau0 = o.tau0;
    c.samples = o.samples;
    c.verify_tol = o.derivative_tol;
    r.input["phi"] = {{"profile", o.phi}, {"params", c.phi.params}};
    r.input["theta"] = c.theta;
    r.input["s_range"] = {c.s0, c.s1};
    if (c.tau0) r.input["tau0"] = *c.tau0;
    SlantSynthesis s = synthesize_slant_from_phi(c);
    r.add("synthesize: <gamma, N>/|gamma| - cos theta", s.max_cos_defect, c.verify_tol);
    r.add("synthesize: |gamma| - phi", s.max_phi_defect, c.verify_tol);
    r.slant = {{"g0", s.g0}, {"tau0", s.tau0}, {"tau0_compatible", s.tau0_compatible}};
    for (auto& n : s.notes) r.diagnostics.push_back("synthesize: " + n);
    result = std::move(s.result);
  } else if (o.kind == "concircular") {
    ConcircularSynthesisConfig c;
    c.f3 = make_profile(o.f3, o.f3_params);
    c.theta = o.theta.value_or(1.0);
    c.rho = o.rho;
    c.f1_0 = o.f1_0;
    c.s0 = o.s0.value_or(0.0);
    c.s1 = o.s1.value_or(1.0);
    c.samples = o.samples;
    c.verify_tol = o.tolerance();
    r.input["f3"] = {{"profile", o.f3}, {"params", c.f3.params}};
    r.input["theta"] = c.theta;
    r.input["rho"] = c.rho;
    r.input["f1_0"] = c.f1_0;
    r.input["s_range"] = {c.s0, c.s1};
    ConcircularSynthesis s = synthesize_concircular(c);
    r.add("synthesize: <V, N> - theta", s.max_theta_defect, c.verify_tol);
    r.torqued = {{"anchor", std::vector<double>(s.anchor.data(), s.anchor.data() + s.anchor.size())},
                 {"degenerate", s.degenerate}};
    for (auto& n : s.notes) r.diagnostics.push_back("synthesize: " + n);
    if (!s.degenerate) field = s.field;
    result = std::move(s.result);
  } else if (o.kind == "frenet") {
    const ScalarProfile kappa = make_profile(o.kappa, o.kappa_params);
    const ScalarProfile tau = make_profile(o.tau, o.tau_params);
    const double s0 = o.s0.value_or(0.0), s1 = o.s1.value_or(10.0);
    r.input["kappa"] = {{"profile", o.kappa}, {"params", kappa.params}};
    r.input["tau"] = {{"profile", o.tau}, {"params", tau.params}};
    r.input["s_range"] = {s0, s1};
    result = frenet_integrate([&](double s) { return kappa(s); }, [&](double s) { return tau(s); },
                              FrameInit{}, s0, s1, o.samples);
  } else {
    throw InputError("unknown synthesis kind '" + o.kind + "' (slant, concircular, frenet)");
  }

  const FrenetData fr = frenet_block(r, result.curve, o);
  if (o.kind == "frenet" && fr.frame_size >= 2) {
    double dk = 0.0, dt = 0.0;
    for (std::size_t j = 0; j < fr.size(); ++j) {
      const std::size_t g = fr.index[j];
      dk = std::max(dk, std::abs(fr.kappa(j, 1) - result.kappa[g]));
      if (fr.frame_size >= 3) dt = std::max(dt, std::abs(fr.kappa(j, 2) - result.tau[g]));
    }
    r.add("synthesize: recomputed kappa", dk, o.derivative_tol);
    r.add("synthesize: recomputed tau", dt, o.derivative_tol);
  }
  if (o.kind == "slant") {
    const FieldSpec axis = builtin_field("radial_unit", result.curve.metric);
    json synthesis = std::move(r.slant);
    slant_block(r, fr, axis, o, false);
    r.slant["synthesis"] = std::move(synthesis);
  }
  if (field) torqued_block(r, fr, *field, o, false);

  const CurveSamples curve = result.curve;
  oc.csv = [curve](std::ostream& os) { write_curve_csv(os, curve); };
  oc.plot = [fr](std::ostream& os) { write_plot_csv(os, fr); };
  return oc;
}

Outcome run_verify_examples(const Options& o) {
  Outcome oc;
  oc.report = example_suite(o.policy());
  oc.csv = [rs = oc.report.residuals](std::ostream& os) {
    const auto precision = os.precision(17);
    os << "name,value,tol,passed\n";
    for (const auto& x : rs)
      os << '"' << x.name << "\"," << x.value << ',' << x.tol << ',' << (x.passed() ? 1 : 0) << '\n';
    os.precision(precision);
  };
  return oc;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  writer(f);
  if (!f) throw InputError("failed writing '" + path + "'");
}

int emit(Outcome& oc, const Options& o, std::ostream& out) {
  oc.report.metadata = default_metadata();
  std::function<void(std::ostream&)> writer;
  if (o.format == "csv") {
    if (!oc.csv) throw InputError("--format csv is not available for this command");
    writer = oc.csv;
  } else {
    writer = [&oc](std::ostream& os) { os << oc.report.to_json().dump(2) << '\n'; };
  }
  if (o.out.empty()) {
    writer(out);
  } else {
    write_file(o.out, writer);
    out << (oc.report.passed() ? "passed" : "FAILED") << ": " << oc.report.residuals.size()
        << " residuals, report written to " << o.out << '\n';
  }
  if (!o.plot.empty()) {
    if (!oc.plot) throw InputError("--plot is not available for this command");
    write_file(o.plot, oc.plot);
  }
  return oc.report.passed() ? 0 : 1;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Tolerance for algebraic checks (default 1e-6)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--derivative-tol", o.derivative_tol,
                  "Tolerance for residuals built from differentiated samples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "Write the report to this file instead of stdout");
  sub->add_option("--format", o.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--serial", o.serial, "Use the serial reference loops");
}

void add_curve_options(CLI::App* sub, Options& o) {
  sub->add_option("--curve", o.curve, "Built-in curve name or CSV file (t,x1,...,xm)")->required();
  sub->add_option("--curve-params", o.curve_params, "Built-in curve parameters")->delimiter(',');
  sub->add_option("--metric", o.metric, "Metric name (CSV curves default to euclidean)");
  sub->add_option("--metric-params", o.metric_params, "Metric parameters")->delimiter(',');
  sub->add_option("--field", o.field, "Built-in field name or CSV file (x1..xm,v1..vm)");
  sub->add_option("--field-params", o.field_params, "Field parameters")->delimiter(',');
  sub->add_option("--samples", o.samples, "Number of arc-length samples")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{9}, std::size_t{1000000}));
  sub->add_option("--plot", o.plot, "Write plot CSV (s, coordinates, curvatures, angle)");
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frenet apparatus, torse-forming fields, slant helices and torqued curves"};
  app.name("torq");
  app.require_subcommand(1);
  app.footer("curves: " + join(builtin_curve_names()) + "\nmetrics: " +
             join(builtin_metric_names()) + "\nfields: " + join(builtin_field_names()) +
             "\nexit status: 0 success, 1 verification failure, 2 usage or input error");
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Frenet data and, with --field, slant and torqued reports");
  add_curve_options(analyze, o);
  add_common(analyze, o);

  auto* slant = app.add_subcommand("slant-check", "Verify a slant helix about an axis field");
  add_curve_options(slant, o);
  add_common(slant, o);

  auto* torqued = app.add_subcommand("torqued-check", "Verify a torqued curve in a torse-forming field");
  add_curve_options(torqued, o);
  add_common(torqued, o);

  auto* classify = app.add_subcommand("classify-field", "Classify a vector field at sample points");
  classify->add_option("--field", o.field, "Built-in field name or CSV file")->required();
  classify->add_option("--field-params", o.field_params, "Field parameters")->delimiter(',');
  classify->add_option("--metric", o.metric, "Metric name (default depends on the field)");
  classify->add_option("--metric-params", o.metric_params, "Metric parameters")->delimiter(',');
  classify->add_option("--dim", o.dim, "Dimension")->capture_default_str();
  classify->add_option("--samples,--points", o.points, "Number of random sample points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  classify->add_option("--seed", o.seed, "Seed of the sample point generator")->capture_default_str();
  add_common(classify, o);

  auto* synth = app.add_subcommand("synthesize", "Build a curve by integrating the Frenet system");
  synth->add_option("--kind", o.kind, "slant, concircular or frenet")
      ->capture_default_str()
      ->check(CLI::IsMember({"slant", "concircular", "frenet"}));
  synth->add_option("--phi", o.phi, "Distance profile for slant synthesis")->capture_default_str();
  synth->add_option("--phi-params", o.phi_params, "Profile parameters")->delimiter(',');
  synth->add_option("--f3", o.f3, "f3 profile for concircular synthesis")->capture_default_str();
  synth->add_option("--f3-params", o.f3_params, "Profile parameters")->delimiter(',');
  synth->add_option("--kappa", o.kappa, "Curvature profile for --kind frenet")->capture_default_str();
  synth->add_option("--kappa-params", o.kappa_params, "Profile parameters")->delimiter(',');
  synth->add_option("--tau", o.tau, "Torsion profile for --kind frenet")->capture_default_str();
  synth->add_option("--tau-params", o.tau_params, "Profile parameters")->delimiter(',');
  synth->add_option("--theta", o.theta, "Slant angle (slant) or <V, N> (concircular)");
  synth->add_option("--tau0", o.tau0, "Initial torsion for slant synthesis");
  synth->add_option("--rho", o.rho, "Concircular factor")->capture_default_str();
  synth->add_option("--f1-0", o.f1_0, "Initial f1 for concircular synthesis")->capture_default_str();
  synth->add_option("--s0", o.s0, "Start of the arc-length interval");
  synth->add_option("--s1", o.s1, "End of the arc-length interval");
  synth->add_option("--samples", o.samples, "Number of output samples")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{9}, std::size_t{1000000}));
  synth->add_option("--plot", o.plot, "Write plot CSV of the synthesized curve");
  add_common(synth, o);

  auto* verify = app.add_subcommand("verify-examples", "Run the reference example checks");
  add_common(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome oc;
    if (analyze->parsed()) oc = run_analyze(o);
    else if (slant->parsed()) oc = run_slant_check(o);
    else if (torqued->parsed()) oc = run_torqued_check(o);
    else if (classify->parsed()) oc = run_classify_field(o);
    else if (synth->parsed()) oc = run_synthesize(o);
    else oc = run_verify_examples(o);
    const int status = emit(oc, o, out);
    if (status != 0)
      for (const auto& r : oc.report.residuals)
        if (!(std::isfinite(r.value) && r.passed()))
          err << "check failed: " << r.name << " = " << r.value << " (tol " << r.tol << ")\n";
    return status;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace torq
