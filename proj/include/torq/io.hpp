#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "torq/curve.hpp"
#include "torq/frenet.hpp"

namespace torq {

struct CurveTable {
  std::vector<double> t;
  std::vector<Vec> points;
};

/// Reads `t,x1,...,xm` with a header line; t must be strictly increasing.
/// Throws InputError with the offending line number.
CurveTable read_curve_csv(const std::string& path);
CurveTable parse_curve_csv(std::istream& in, const std::string& source = "<stream>");

struct FieldTable {
  std::vector<Vec> points;
  std::vector<Vec> vectors;
};

/// Reads `x1,...,xm,v1,...,vm` with a header line.
FieldTable read_field_csv(const std::string& path);
FieldTable parse_field_csv(std::istream& in, const std::string& source = "<stream>");

/// Writes the grid samples as `t,x1,...,xm`.
void write_curve_csv(std::ostream& out, const CurveSamples& curve);

/// Plot data: s, x1..xm, kappa1..kappa_{r-1} and, when given, the angle
/// function.
void write_plot_csv(std::ostream& out, const FrenetData& frenet,
                    const std::vector<double>& angle = {});

/// Frenet export: s, x1..xm, N{i}_{k} for every frame vector, kappa1..
void write_frenet_csv(std::ostream& out, const FrenetData& frenet);

}  // namespace torq
