#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "torq/error.hpp"
#include "torq/io.hpp"
#include "torq/synthesis.hpp"

using namespace torq;

namespace {

std::string error_of(const std::string& text, bool field = false) {
  std::istringstream in(text);
  try {
    if (field)
      parse_field_csv(in, "in.csv");
    else
      parse_curve_csv(in, "in.csv");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, ParsesCurveTable) {
  std::istringstream in("t,x1,x2,x3\n0,1,2,3\n\n0.5, 4 ,5,6e-1\n");
  const auto t = parse_curve_csv(in);
  ASSERT_EQ(t.t.size(), 2u);
  EXPECT_EQ(t.t[1], 0.5);
  EXPECT_EQ(t.points[1][1], 5.0);
  EXPECT_EQ(t.points[1][2], 0.6);
}

TEST(Io, CurveErrorsCarryLocation) {
  EXPECT_NE(error_of("t,x1,x2\n0,1,2\n1,abc,2\n").find("in.csv:3:"), std::string::npos);
  EXPECT_NE(error_of("t,x1,x2\n0,1,2\n1,2\n").find("in.csv:3: expected 3 columns"), std::string::npos);
  EXPECT_NE(error_of("t,x1,x2\n0,1,2\n0,1,2\n").find("strictly increasing"), std::string::npos);
  EXPECT_NE(error_of("t,x1\n0,1\n").find("header"), std::string::npos);
  EXPECT_NE(error_of("t,y1,y2\n0,1,2\n").find("must be named x1"), std::string::npos);
  EXPECT_NE(error_of("t,x1,x2\n").find("no data rows"), std::string::npos);
  EXPECT_NE(error_of("").find("empty"), std::string::npos);
  EXPECT_NE(error_of("t,x1,x2\n0,1,inf\n").find("in.csv:2:"), std::string::npos);
}

TEST(Io, FieldTable) {
  std::istringstream in("x1,x2,v1,v2\n1,2,3,4\n");
  const auto f = parse_field_csv(in);
  ASSERT_EQ(f.points.size(), 1u);
  EXPECT_EQ(f.points[0][1], 2.0);
  EXPECT_EQ(f.vectors[0][0], 3.0);
  EXPECT_NE(error_of("x1,x2,v1\n1,2,3\n", true).find("header"), std::string::npos);
  EXPECT_NE(error_of("x1,x2,v2,v1\n1,2,3,4\n", true).find("header"), std::string::npos);
}

TEST(Io, MissingFile) {
  EXPECT_THROW(read_curve_csv("/nonexistent/curve.csv"), InputError);
  EXPECT_THROW(read_field_csv("/nonexistent/field.csv"), InputError);
}

TEST(Io, CurveRoundTripIsExact) {
  const auto curve = builtin_curve("cone_loxodrome");
  std::stringstream buf;
  write_curve_csv(buf, curve);
  const auto t = parse_curve_csv(buf);
  ASSERT_EQ(t.t.size(), curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(t.t[i], curve.grid[i]);
    EXPECT_EQ(t.points[i], curve.points[i]);
  }
}

TEST(Io, PlotAndFrenetColumns) {
  const auto fr = frenet_apparatus(builtin_curve("cone_loxodrome"));
  std::stringstream plot, frames;
  write_plot_csv(plot, fr, std::vector<double>(fr.size(), 0.5));
  write_frenet_csv(frames, fr);
  std::string header;
  std::getline(plot, header);
  EXPECT_EQ(header, "s,x1,x2,x3,kappa1,kappa2,angle");
  std::getline(frames, header);
  EXPECT_EQ(header.substr(0, 18), "s,x1,x2,x3,N1_1,N1");
  EXPECT_NE(header.find("kappa2"), std::string::npos);
  EXPECT_THROW(write_plot_csv(plot, fr, {1.0}), InputError);
}
