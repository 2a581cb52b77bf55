#include "torq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "torq/error.hpp"

namespace torq {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

double parse_number(std::string_view s, const std::string& source, std::size_t line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError(where(source, line) + "cannot parse '" + std::string(s) + "' as a number");
  if (!std::isfinite(x)) throw InputError(where(source, line) + "non-finite value");
  return x;
}

// Header plus numeric rows of a fixed width.
std::vector<std::vector<double>> parse_table(std::istream& in, const std::string& source,
                                             std::vector<std::string>& header) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw InputError(source + ": file is empty");
  for (auto h : split(line)) header.emplace_back(h);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw InputError(where(source, number) + "expected " + std::to_string(header.size()) +
                       " columns, found " + std::to_string(cells.size()));
    std::vector<double> row;
    for (auto c : cells) row.push_back(parse_number(c, source, number));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "': file not found or unreadable");
  return in;
}

}  // namespace

CurveTable parse_curve_csv(std::istream& in, const std::string& source) {
  std::vector<std::string> header;
  const auto rows = parse_table(in, source, header);
  if (header.size() < 3 || header[0] != "t")
    throw InputError(source + ": header must be t,x1,...,xm with m ≥ 2");
  for (std::size_t i = 1; i < header.size(); ++i)
    if (header[i] != "x" + std::to_string(i))
      throw InputError(source + ": column " + std::to_string(i + 1) + " must be named x" +
                       std::to_string(i) + ", found '" + header[i] + "'");
  CurveTable out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0 && !(rows[r][0] > rows[r - 1][0]))
      throw InputError(source + ": t must be strictly increasing (data row " +
                       std::to_string(r + 1) + ")");
    out.t.push_back(rows[r][0]);
    Vec p(static_cast<Eigen::Index>(header.size() - 1));
    for (std::size_t i = 1; i < header.size(); ++i) p[static_cast<Eigen::Index>(i - 1)] = rows[r][i];
    out.points.push_back(std::move(p));
  }
  if (out.t.empty()) throw InputError(source + ": no data rows");
  return out;
}

CurveTable read_curve_csv(const std::string& path) {
  auto in = open(path);
  return parse_curve_csv(in, path);
}

FieldTable parse_field_csv(std::istream& in, const std::string& source) {
  std::vector<std::string> header;
  const auto rows = parse_table(in, source, header);
  if (header.size() < 4 || header.size() % 2 != 0)
    throw InputError(source + ": header must be x1,...,xm,v1,...,vm with m ≥ 2");
  const std::size_t m = header.size() / 2;
  for (std::size_t i = 0; i < m; ++i)
    if (header[i] != "x" + std::to_string(i + 1) || header[m + i] != "v" + std::to_string(i + 1))
      throw InputError(source + ": header must be x1,...,xm,v1,...,vm");
  FieldTable out;
  for (const auto& row : rows) {
    out.points.push_back(Eigen::Map<const Vec>(row.data(), static_cast<Eigen::Index>(m)));
    out.vectors.push_back(Eigen::Map<const Vec>(row.data() + m, static_cast<Eigen::Index>(m)));
  }
  if (out.points.empty()) throw InputError(source + ": no data rows");
  return out;
}

FieldTable read_field_csv(const std::string& path) {
  auto in = open(path);
  return parse_field_csv(in, path);
}

void write_curve_csv(std::ostream& out, const CurveSamples& curve) {
  const auto flags = out.flags();
  const auto precision = out.precision(17);
  out << "t";
  for (int i = 1; i <= curve.dim(); ++i) out << ",x" << i;
  out << '\n';
  for (std::size_t j = 0; j < curve.size(); ++j) {
    out << curve.grid[j];
    for (Eigen::Index i = 0; i < curve.points[j].size(); ++i) out << ',' << curve.points[j][i];
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_plot_csv(std::ostream& out, const FrenetData& frenet, const std::vector<double>& angle) {
  if (!angle.empty() && angle.size() != frenet.size())
    throw InputError("angle samples do not match the Frenet grid");
  const auto precision = out.precision(17);
  out << "s";
  for (int i = 1; i <= frenet.dim; ++i) out << ",x" << i;
  for (int i = 1; i < frenet.order; ++i) out << ",kappa" << i;
  if (!angle.empty()) out << ",angle";
  out << '\n';
  for (std::size_t j = 0; j < frenet.size(); ++j) {
    out << frenet.s[j];
    for (Eigen::Index i = 0; i < frenet.points[j].size(); ++i) out << ',' << frenet.points[j][i];
    for (int i = 1; i < frenet.order; ++i) out << ',' << frenet.kappa(j, i);
    if (!angle.empty()) out << ',' << angle[j];
    out << '\n';
  }
  out.precision(precision);
}

void write_frenet_csv(std::ostream& out, const FrenetData& frenet) {
  const auto precision = out.precision(17);
  out << "s";
  for (int i = 1; i <= frenet.dim; ++i) out << ",x" << i;
  for (int a = 1; a <= frenet.frame_size; ++a)
    for (int i = 1; i <= frenet.dim; ++i) out << ",N" << a << '_' << i;
  for (int i = 1; i < frenet.frame_size; ++i) out << ",kappa" << i;
  out << '\n';
  for (std::size_t j = 0; j < frenet.size(); ++j) {
    out << frenet.s[j];
    for (Eigen::Index i = 0; i < frenet.points[j].size(); ++i) out << ',' << frenet.points[j][i];
    for (const Vec& n : frenet.frames[j])
      for (Eigen::Index i = 0; i < n.size(); ++i) out << ',' << n[i];
    for (int i = 1; i < frenet.frame_size; ++i) out << ',' << frenet.kappa(j, i);
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace torq
