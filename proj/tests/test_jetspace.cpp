#include <gtest/gtest.h>

#include "jetvar/errors.hpp"
#include "jetvar/fnverify.hpp"
#include "jetvar/jetspace.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/sampling.hpp"

using namespace jetvar;

namespace {

const JetSpace kSpace(2, 2);

VectorField random_field(SampleRng& rng) {
  std::vector<Expr> c;
  for (int a = 0; a < kSpace.dim(); ++a) c.push_back(random_polynomial(kSpace, rng));
  return VectorField(kSpace, std::move(c));
}

OneForm random_form(SampleRng& rng) {
  std::vector<Expr> c;
  for (int a = 0; a < kSpace.dim(); ++a) c.push_back(random_polynomial(kSpace, rng));
  return OneForm(kSpace, std::move(c));
}

double dev(std::span<const Expr> a, std::span<const Expr> b, std::uint64_t seed = 1) {
  return max_deviation(a, b, sample_points(kSpace, 30, seed));
}

double peak(std::span<const Expr> a) { return max_abs_value(a, sample_points(kSpace, 30, 2)); }

}  // namespace

TEST(Canonical, LiouvilleComponents) {
  const VectorField c1 = liouville(kSpace, 1);
  const VectorField c2 = liouville(kSpace, 2);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_TRUE(c1[(CoordId{0, i})].is_zero());
    EXPECT_EQ(c1[(CoordId{1, i})], Expr::coord(1, i));
    EXPECT_EQ(c1[(CoordId{2, i})], Expr(2.0) * Expr::coord(2, i));
    EXPECT_TRUE(c2[(CoordId{1, i})].is_zero());
    EXPECT_EQ(c2[(CoordId{2, i})], Expr::coord(1, i));
  }
}

TEST(Canonical, TangentPowersCompose) {
  const Tensor11 j1 = tangent_tensor(kSpace, 1);
  const Tensor11 j2 = tangent_tensor(kSpace, 2);
  const Tensor11 j3 = tangent_tensor(kSpace, 3);
  EXPECT_EQ(dev(compose(j1, j1).entries(), j2.entries()), 0.0);
  EXPECT_EQ(peak(j3.entries()), 0.0);
  EXPECT_EQ(peak(compose(j1, j2).entries()), 0.0);
  EXPECT_EQ(j1(kSpace.flat({1, 2}), kSpace.flat({0, 2})), Expr(1.0));
}

TEST(Canonical, TotalDerivative) {
  EXPECT_EQ(tulczyjew(kSpace, Expr::coord(0, 1)), Expr::coord(1, 1));
  EXPECT_EQ(tulczyjew(kSpace, Expr::coord(1, 2)), Expr(2.0) * Expr::coord(2, 2));
  EXPECT_THROW(tulczyjew(kSpace, Expr::coord(2, 1)), OrderOverflow);
  const Expr f = parse("x1 * x2^2", kSpace);
  const Expr lhs[] = {tulczyjew(kSpace, f)};
  const Expr rhs[] = {parse("y1_1 * x2^2 + 2 * x1 * x2 * y1_2", kSpace)};
  EXPECT_LT(dev(lhs, rhs), 1e-15);
}

TEST(Canonical, SemisprayActsThroughTopOrder) {
  const Semispray s(kSpace, {parse("x1 * y1_2", kSpace), Expr(0.5)});
  const Expr lhs[] = {semispray_apply(s, Expr::coord(2, 1)), semispray_apply(s, Expr::coord(2, 2)),
                      semispray_apply(s, Expr::coord(0, 2))};
  const Expr rhs[] = {parse("-3 * x1 * y1_2", kSpace), Expr(-1.5), Expr::coord(1, 2)};
  EXPECT_LT(dev(lhs, rhs), 1e-15);
}

TEST(Calculus, ExteriorDerivativeSquaresToZero) {
  SampleRng rng(3);
  for (int t = 0; t < 5; ++t) {
    const Expr f = random_polynomial(kSpace, rng);
    EXPECT_LT(peak(exterior_d(exterior_d(kSpace, f)).entries()), 1e-14);
  }
}

TEST(Calculus, CartanFormula) {
  SampleRng rng(4);
  for (int t = 0; t < 5; ++t) {
    const VectorField x = random_field(rng);
    const OneForm theta = random_form(rng);
    const OneForm lhs = lie_derivative(x, theta);
    const OneForm id = interior(x, exterior_d(theta));
    const OneForm di = exterior_d(kSpace, interior(x, theta));
    std::vector<Expr> rhs;
    for (int a = 0; a < kSpace.dim(); ++a) rhs.push_back(id[a] + di[a]);
    EXPECT_LT(dev(lhs.components(), rhs), 1e-12);
  }
}

TEST(Calculus, BracketIsAntisymmetricAndSatisfiesJacobi) {
  SampleRng rng(5);
  const VectorField x = random_field(rng);
  const VectorField y = random_field(rng);
  const VectorField z = random_field(rng);
  const VectorField xy = lie_bracket(x, y);
  const VectorField yx = lie_bracket(y, x);
  std::vector<Expr> sum_xy;
  std::vector<Expr> jacobi;
  const VectorField a = lie_bracket(x, lie_bracket(y, z));
  const VectorField b = lie_bracket(y, lie_bracket(z, x));
  const VectorField c = lie_bracket(z, lie_bracket(x, y));
  for (int i = 0; i < kSpace.dim(); ++i) {
    sum_xy.push_back(xy[i] + yx[i]);
    jacobi.push_back(a[i] + b[i] + c[i]);
  }
  EXPECT_LT(peak(sum_xy), 1e-13);
  EXPECT_LT(peak(jacobi), 1e-11);
}

TEST(Calculus, BracketActsAsCommutator) {
  SampleRng rng(6);
  const VectorField x = random_field(rng);
  const VectorField y = random_field(rng);
  const Expr f = random_polynomial(kSpace, rng);
  const Expr lhs[] = {apply(lie_bracket(x, y), f)};
  const Expr rhs[] = {apply(x, apply(y, f)) - apply(y, apply(x, f))};
  EXPECT_LT(dev(lhs, rhs), 1e-12);
}

TEST(FnBracket, IdentityTensorIsInvariant) {
  SampleRng rng(7);
  const VectorField x = random_field(rng);
  EXPECT_LT(peak(fn_bracket(x, identity_tensor(kSpace)).entries()), 1e-14);
}

TEST(FnBracket, LeibnizOnApplication) {
  // L_X (K Y) = (L_X K) Y + K [X, Y]
  SampleRng rng(8);
  const VectorField x = random_field(rng);
  const VectorField y = random_field(rng);
  const Tensor11 k = tangent_tensor(kSpace, 1);
  const VectorField lhs = lie_bracket(x, apply(k, y));
  const VectorField p = apply(fn_bracket(x, k), y);
  const VectorField q = apply(k, lie_bracket(x, y));
  std::vector<Expr> rhs;
  for (int a = 0; a < kSpace.dim(); ++a) rhs.push_back(p[a] + q[a]);
  EXPECT_LT(dev(lhs.components(), rhs), 1e-12);
}

TEST(FnBracket, NegativeControlCatchesWrongSign) {
  // [C_1, J^1] = -J^1; the opposite sign must be detected.
  const Tensor11 br = fn_bracket(liouville(kSpace, 1), tangent_tensor(kSpace, 1));
  const Tensor11 j = tangent_tensor(kSpace, 1);
  std::vector<Expr> minus;
  for (const Expr& e : j.entries()) minus.push_back(-e);
  EXPECT_LT(dev(br.entries(), minus), 1e-15);
  EXPECT_GT(dev(br.entries(), j.entries()), 0.5);
}

TEST(Forms, VerticalDerivativeAndContraction) {
  const Expr f = parse("x1 * y2_1 + y1_2^2", kSpace);
  const SemiBasicForm d1 = d_J_alpha(kSpace, f, 1);
  EXPECT_EQ(d1.order, 2);
  const Expr lhs[] = {d1.form[(CoordId{0, 2})], d1.form[(CoordId{1, 1})], d1.form[(CoordId{2, 1})]};
  const Expr rhs[] = {parse("2 * y1_2", kSpace), Expr::coord(0, 1), Expr()};
  EXPECT_LT(dev(lhs, rhs), 1e-15);

  const SemiBasicForm theta{exterior_d(kSpace, Expr::coord(1, 1) * Expr::coord(0, 2)), 2};
  const SemiBasicForm shifted = i_J_alpha(theta, 1);
  EXPECT_EQ(shifted.order, 1);
  EXPECT_TRUE(semi_basic_violation(shifted.form, 1).empty() ||
              peak(semi_basic_violation(shifted.form, 1)) == 0.0);
  EXPECT_EQ(shifted.form[(CoordId{0, 1})], Expr::coord(0, 2));
}
