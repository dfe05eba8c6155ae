#include <gtest/gtest.h>

#include "jetvar/errors.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/variational.hpp"
#include "test_support.hpp"

using namespace jetvar;
using jetvar::testing::warped;

TEST(Lagrangian, RejectsOrderAboveK) {
  const JetSpace space = lagrangian_space(2, 1);
  EXPECT_EQ(space.r(), 1);
  EXPECT_EQ(lagrangian_space(2, 2).r(), 3);
  EXPECT_ANY_THROW(Lagrangian(2, 1, Expr::coord(2, 1)));
}

TEST(ElCoefficient, SignedCentralBinomial) {
  EXPECT_DOUBLE_EQ(el_coefficient(1), -2.0);
  EXPECT_DOUBLE_EQ(el_coefficient(2), 6.0);
  EXPECT_DOUBLE_EQ(el_coefficient(3), -20.0);
}

TEST(Quadratic, EnergyHessianAndForm) {
  const Metric g = warped();
  const Lagrangian l = build_l1(g);
  const PointSet pts = sample_regular(l.space(), 40, 1);
  const Expr e[] = {energy(l)};
  const Expr f[] = {l.function()};
  EXPECT_LT(max_deviation(e, f, pts), 1e-14);

  EXPECT_LT(max_deviation(hessian(l).entries(), g.matrix().entries(), pts), 1e-15);

  // theta = g_ij y^j dx^i
  const SemiBasicForm theta = poincare_cartan(l);
  EXPECT_EQ(theta.order, 1);
  const auto y = jet_vector(2, 1);
  const Expr lhs[] = {theta.form[(CoordId{0, 1})], theta.form[(CoordId{0, 2})], theta.form[(CoordId{1, 1})]};
  const Expr rhs[] = {y[0], g(1, 1) * y[1], Expr()};
  EXPECT_LT(max_deviation(lhs, rhs, pts), 1e-15);
}

TEST(ElSystem, MatchesClosedForm) {
  for (const Lagrangian& l : {build_l1(warped()), build_l2(warped())}) {
    const PointSet pts = sample_regular(l.space(), 30, 2);
    const ElSystem sys = extract_el_system(l);
    const ExprMatrix expected = Expr(el_coefficient(l.k())) * hessian(l);
    EXPECT_LT(max_deviation(sys.a.entries(), expected.entries(), pts), 1e-12) << "k=" << l.k();
  }
}

TEST(Derive, ResidualVanishesForDerivedSemispray) {
  for (const Lagrangian& l : {build_l1(warped()), build_l2(warped())}) {
    const PointSet pts = sample_regular(l.space(), 50, 3);
    const DerivedSemispray d = derive_semispray(l, pts);
    EXPECT_EQ(d.hessian_rank, 2);
    EXPECT_LT(d.system_deviation, 1e-12);
    const OneForm res = el_residual(l, d.semispray);
    EXPECT_LT(max_abs_value(res.components(), pts), 1e-11) << "k=" << l.k();
  }
}

TEST(Derive, FlatBiharmonicIsFree) {
  const Lagrangian l = build_l2(Metric::euclidean(3));
  const PointSet pts = sample_regular(l.space(), 20, 4);
  const DerivedSemispray d = derive_semispray(l, pts);
  EXPECT_EQ(max_abs_value(d.semispray.coefficients(), pts), 0.0);
}

TEST(Derive, SingularHessianThrows) {
  const JetSpace space = lagrangian_space(2, 1);
  const Lagrangian l(2, 1, parse("0.5 * y1_1^2 + x2", space));
  const PointSet pts = sample_regular(l.space(), 10, 5);
  EXPECT_THROW(derive_semispray(l, pts), SingularHessian);
  EXPECT_FALSE(regularity_check(l, pts).regular);
  EXPECT_EQ(regularity_check(l, pts).max_rank, 1);
}

TEST(PoincareCartan, TwoFormRankIsFull) {
  const Lagrangian l1 = build_l1(warped());
  const Lagrangian l2 = build_l2(warped());
  const PointSet p1 = sample_regular(l1.space(), 5, 6);
  const PointSet p2 = sample_regular(l2.space(), 5, 6);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(pc_two_form_rank(l1, p1.point(i)), 4);
    EXPECT_EQ(pc_two_form_rank(l2, p2.point(i)), 8);
  }
}

TEST(PoincareCartan, CharacterizesOnlyTheLagrangianSemispray) {
  const Metric g = warped();
  const Lagrangian l = build_l1(g);
  const PointSet pts = sample_regular(l.space(), 40, 7);
  const SemiBasicForm theta = poincare_cartan(l);
  const Semispray geodesic(l.space(), geodesic_spray_coefficients(g));
  const PcCharacterization good = verify_pc_characterization(theta, geodesic, pts, 1e-9, l.function());
  EXPECT_TRUE(good.passed);
  EXPECT_EQ(good.min_rank, good.expected_rank);
  ASSERT_TRUE(good.order_one.has_value());
  EXPECT_LT(*good.order_one, 1e-12);

  const Semispray wrong(l.space(), {parse("x2 * y1_1", l.space()), Expr(0.3)});
  const PcCharacterization bad = verify_pc_characterization(theta, wrong, pts, 1e-9, l.function());
  EXPECT_FALSE(bad.passed);
}

TEST(SemisprayPower, RepeatsApplication) {
  const Lagrangian l = build_l2(warped());
  const Semispray s(l.space());
  const Expr x = Expr::coord(0, 1);
  EXPECT_EQ(semispray_power(s, x, 0), x);
  EXPECT_EQ(semispray_power(s, x, 1), Expr::coord(1, 1));
  EXPECT_EQ(semispray_power(s, x, 2), Expr(2.0) * Expr::coord(2, 1));
}
