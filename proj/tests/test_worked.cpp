#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "jetvar/errors.hpp"
#include "jetvar/tape.hpp"
#include "test_support.hpp"

using namespace jetvar;
using jetvar::testing::diagonal_metric;

TEST(MetricInput, Validation) {
  EXPECT_THROW(Metric(ExprMatrix(2, 3)), std::invalid_argument);
  const JetSpace base(2, 1);
  ExprMatrix velocity = ExprMatrix::identity(2);
  velocity(0, 0) = Expr::coord(1, 1);
  EXPECT_THROW(Metric{velocity}, std::invalid_argument);
  ExprMatrix skew = ExprMatrix::identity(2);
  skew(0, 1) = parse("x1", base);
  EXPECT_THROW(Metric{skew}, std::invalid_argument);
  EXPECT_FALSE(diagonal_metric({"1", "-1"}).positive_definite_sampled());
  EXPECT_TRUE(diagonal_metric({"1", "1 + x1^2"}).positive_definite_sampled());
}

TEST(MetricInput, SingularMetricsRejected) {
  EXPECT_THROW(christoffel(diagonal_metric({"1", "0"})), SingularMetric);
  const JetSpace base(2, 1);
  ExprMatrix m(2, 2);
  m(0, 0) = Expr(1.0);
  m(0, 1) = parse("x1", base);
  m(1, 0) = parse("x1", base);
  m(1, 1) = parse("x1^2", base);
  EXPECT_THROW(christoffel(Metric(m)), SingularMetric);
}

TEST(Christoffel, RoundSphere) {
  const Metric g = diagonal_metric({"1", "sin(x1)^2"});
  const Christoffel gamma = christoffel(g);
  const JetPoint p(JetSpace(2, 1), std::vector<double>{0.7, 0.2, 0.0, 0.0});
  EXPECT_NEAR(eval(gamma[0][1][1], p), -std::sin(0.7) * std::cos(0.7), 1e-15);
  EXPECT_NEAR(eval(gamma[1][0][1], p), std::cos(0.7) / std::sin(0.7), 1e-14);
  EXPECT_NEAR(eval(gamma[1][1][0], p), std::cos(0.7) / std::sin(0.7), 1e-14);
  EXPECT_NEAR(eval(gamma[0][0][0], p), 0.0, 1e-15);
}

TEST(Christoffel, FlatMetricHasNone) {
  const Christoffel gamma = christoffel(Metric::euclidean(3));
  for (const auto& a : gamma)
    for (const auto& b : a)
      for (const Expr& c : b) EXPECT_TRUE(c.is_zero());
}

TEST(Builders, PlanarSecondOrderFunction) {
  const FinslerCandidate f2 = build_f2(Metric::euclidean(2));
  const JetSpace& space = f2.space();
  std::vector<double> p(static_cast<std::size_t>(space.dim()), 0.0);
  p[static_cast<std::size_t>(space.flat({1, 1}))] = 2.0;
  p[static_cast<std::size_t>(space.flat({2, 2}))] = 3.0;
  // (|z|^2 |y|^2 - <y,z>^2) / |y|^5 = 9 * 4 / 32
  EXPECT_DOUBLE_EQ(eval(f2.function(), JetPoint(space, p)), 36.0 / 32.0);

  const PointFilter keep = transverse_acceleration_filter(Metric::euclidean(2), space);
  EXPECT_TRUE(keep(p));
  p[static_cast<std::size_t>(space.flat({2, 2}))] = 0.0;
  p[static_cast<std::size_t>(space.flat({2, 1}))] = 3.0;
  EXPECT_FALSE(keep(p));
}

TEST(Integrate, QuadraticMotionAndCsv) {
  const JetSpace space(1, 1);
  const Semispray s(space, {Expr(-0.5)});  // x'' = 1
  const Trajectory tr = integrate(s, JetPoint(space, std::vector<double>{0.0, 0.0}), 0.0, 2.0, 8);
  ASSERT_EQ(tr.times.size(), 9u);
  EXPECT_DOUBLE_EQ(tr.step, 0.25);
  EXPECT_NEAR(tr.states.row(8)[0], 2.0, 1e-14);
  EXPECT_NEAR(tr.states.row(8)[1], 2.0, 1e-14);

  std::ostringstream csv;
  write_csv(csv, tr);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,x1,y1_1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
}

TEST(Integrate, LeavingDomainReportsStep) {
  const JetSpace space(1, 1);
  const Semispray s(space, {parse("1 / x1", space)});
  try {
    integrate(s, JetPoint(space, std::vector<double>{0.0, 1.0}), 0.0, 1.0, 10);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("step 0"), std::string::npos);
  }
  EXPECT_THROW(integrate(s, JetPoint(space, std::vector<double>{1.0, 0.0}), 0.0, 1.0, 0), std::invalid_argument);
}

TEST(Integrate, SphereGeodesicKeepsSpeed) {
  const Metric g = diagonal_metric({"1", "sin(x1)^2"});
  const Semispray s(JetSpace(2, 1), geodesic_spray_coefficients(g));
  const Trajectory tr = integrate(s, JetPoint(s.space(), std::vector<double>{1.0, 0.0, 0.2, 0.6}), 0.0, 3.0, 600);
  const auto speed = [](std::span<const double> z) { return z[2] * z[2] + std::pow(std::sin(z[0]) * z[3], 2); };
  const double v0 = speed(tr.states.row(0));
  for (std::size_t i = 0; i < tr.states.size(); ++i) EXPECT_NEAR(speed(tr.states.row(i)), v0, 1e-9);
}
