#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "jetvar/errors.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/sampling.hpp"
#include "jetvar/tape.hpp"

using namespace jetvar;

namespace {

const JetSpace kSpace(2, 2);

Expr x(int i) { return Expr::coord(0, i); }
Expr y(int a, int i) { return Expr::coord(a, i); }

// Random expression tree over kSpace; partial functions get arguments that
// stay inside their domain on [-1, 1).
Expr random_expr(SampleRng& rng, int depth) {
  if (depth == 0 || rng.below(4) == 0) {
    if (rng.below(3) == 0) return Expr(std::round(rng.uniform() * 40.0) / 8.0);
    return Expr::coord(rng.below(3), rng.below(2) + 1);
  }
  const Expr a = random_expr(rng, depth - 1);
  switch (rng.below(9)) {
    case 0: return a + random_expr(rng, depth - 1);
    case 1: return a - random_expr(rng, depth - 1);
    case 2: return a * random_expr(rng, depth - 1);
    case 3: return a / (Expr(2.5) + sin(random_expr(rng, depth - 1)));
    case 4: return pow(a, Expr(static_cast<double>(rng.below(3) + 2)));
    case 5: return sin(a);
    case 6: return cos(a);
    case 7: return exp(Expr(0.1) * a);
    default: return sqrt(Expr(1.0) + a * a);
  }
}

void for_random_exprs(std::uint64_t seed, int count, const std::function<void(const Expr&)>& body) {
  SampleRng rng(seed);
  for (int t = 0; t < count; ++t) body(random_expr(rng, 4));
}

}  // namespace

TEST(Expr, HashConsingSharesStructure) {
  const Expr a = sin(x(1)) * y(1, 2);
  const Expr b = sin(x(1)) * y(1, 2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sin(x(2)) * y(1, 2));
}

TEST(Expr, FoldingIdentities) {
  const Expr e = x(1);
  EXPECT_EQ(e + Expr(0.0), e);
  EXPECT_EQ(e * Expr(1.0), e);
  EXPECT_TRUE((e * Expr(0.0)).is_zero());
  EXPECT_TRUE(pow(e, Expr(0.0)).is_one());
  EXPECT_EQ(pow(e, Expr(1.0)), e);
  EXPECT_TRUE((Expr(0.0) / e).is_zero());
  EXPECT_DOUBLE_EQ((Expr(2.0) * Expr(3.5)).value(), 7.0);
  EXPECT_EQ(-(-e), e);
}

TEST(Expr, ConstantsFloatOutward) {
  const Expr e = Expr(0.25) * (Expr(-2.0) * x(1));
  ASSERT_EQ(e.op(), Op::Mul);
  EXPECT_DOUBLE_EQ(e.arg(0).value(), -0.5);
  const Expr d = x(2) / -(Expr(-2.0) * x(1));
  const JetPoint p(kSpace, std::vector<double>{0.3, 0.7, 0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(eval(d, p), 0.7 / 0.6);
}

TEST(Expr, MaxOrderAndDependence) {
  const Expr e = x(1) * y(2, 1);
  EXPECT_EQ(e.max_order(), 2);
  EXPECT_EQ(Expr(3.0).max_order(), -1);
  EXPECT_TRUE(e.may_depend_on({2, 1}));
  EXPECT_FALSE(e.may_depend_on({1, 1}));
}

TEST(Expr, DiffKnownForms) {
  const Expr e = x(1) * x(1) * y(1, 2);
  EXPECT_EQ(diff(e, {1, 1}), Expr());
  const JetPoint p(kSpace, std::vector<double>{0.5, 0.0, 0.0, 2.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(eval(diff(e, {0, 1}), p), 2.0 * 0.5 * 2.0);
  EXPECT_DOUBLE_EQ(eval(diff(sin(x(1)), {0, 1}), p), std::cos(0.5));
  EXPECT_DOUBLE_EQ(eval(diff(log(Expr(2.0) + x(1)), {0, 1}), p), 1.0 / 2.5);
}

TEST(ExprProperty, DiffMatchesCentralDifferences) {
  const PointSet pts = sample_points(kSpace, 10, 3);
  for_random_exprs(11, 60, [&](const Expr& e) {
    for (int a = 0; a < kSpace.dim(); ++a) {
      const CoordId c = kSpace.coord(a);
      const Expr d = diff(e, c);
      for (std::size_t p = 0; p < pts.size(); ++p) {
        std::vector<double> hi(pts.row(p).begin(), pts.row(p).end());
        std::vector<double> lo = hi;
        const double h = 1e-5;
        hi[static_cast<std::size_t>(a)] += h;
        lo[static_cast<std::size_t>(a)] -= h;
        const double fd = (eval(e, JetPoint(kSpace, hi)) - eval(e, JetPoint(kSpace, lo))) / (2 * h);
        EXPECT_LT(relative_deviation(eval(d, pts.point(p)), fd), 1e-6) << render(e) << " d/d" << coord_name(c);
      }
    }
  });
}

TEST(ExprProperty, MixedPartialsCommute) {
  const PointSet pts = sample_points(kSpace, 10, 4);
  for_random_exprs(12, 60, [&](const Expr& e) {
    const CoordId a{0, 1};
    const CoordId b{1, 2};
    const Expr ab[] = {diff(diff(e, a), b)};
    const Expr ba[] = {diff(diff(e, b), a)};
    EXPECT_LT(max_deviation(ab, ba, pts), 1e-12) << render(e);
  });
}

TEST(ExprProperty, SimplifyPreservesValue) {
  const PointSet pts = sample_points(kSpace, 10, 5);
  for_random_exprs(13, 80, [&](const Expr& e) {
    const Expr lhs[] = {e};
    const Expr rhs[] = {simplify(e)};
    EXPECT_LT(max_deviation(lhs, rhs, pts), 1e-14) << render(e);
  });
}

TEST(ExprProperty, ParseRenderRoundTrip) {
  const PointSet pts = sample_points(kSpace, 10, 6);
  for_random_exprs(14, 80, [&](const Expr& e) {
    const std::string text = render(e);
    const Expr back[] = {parse(text, kSpace)};
    const Expr orig[] = {e};
    EXPECT_LT(max_deviation(orig, back, pts), 1e-14) << text;
    EXPECT_EQ(render(back[0]), text);
  });
}

TEST(Parser, PrecedenceAndAssociativity) {
  const JetPoint p(kSpace, std::vector<double>{2.0, 3.0, 0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(eval(parse("x1 + x2 * 2", kSpace), p), 8.0);
  EXPECT_DOUBLE_EQ(eval(parse("2^3^2", kSpace), p), 512.0);
  EXPECT_DOUBLE_EQ(eval(parse("-x1^2", kSpace), p), -4.0);
  EXPECT_DOUBLE_EQ(eval(parse("(x1 - x2) / 2", kSpace), p), -0.5);
  EXPECT_DOUBLE_EQ(eval(parse("1.5e1 + 0", kSpace), p), 15.0);
}

TEST(Parser, CoordinatesAndErrors) {
  EXPECT_EQ(parse("y2_1", kSpace), Expr::coord(2, 1));
  EXPECT_THROW(parse("x1 +", kSpace), SyntaxError);
  EXPECT_THROW(parse("(x1", kSpace), SyntaxError);
  EXPECT_THROW(parse("tan(x1)", kSpace), UnknownIdentifier);
  EXPECT_THROW(parse("x3", kSpace), IndexOutOfRange);
  EXPECT_THROW(parse("y3_1", kSpace), IndexOutOfRange);
  try {
    parse("x1 * $", kSpace);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Tape, SharedSubtermsCompileOnce) {
  const Expr s = sin(x(1) * y(1, 1));
  const Expr outs[] = {s * s, s + Expr(1.0), cos(s)};
  const Tape tape(kSpace, outs);
  const Expr single[] = {cos(s)};
  EXPECT_LE(tape.num_instructions(), Tape(kSpace, single).num_instructions() + 5);
  const JetPoint p(kSpace, std::vector<double>{0.4, 0, 0.9, 0, 0, 0});
  const auto v = tape.eval(p.coords());
  EXPECT_DOUBLE_EQ(v[2], std::cos(std::sin(0.36)));
}

TEST(Tape, DomainErrors) {
  const JetPoint p(kSpace, std::vector<double>{-1.0, 0, 0, 0, 0, 0});
  EXPECT_THROW(eval(sqrt(x(1)), p), DomainError);
  EXPECT_THROW(eval(log(x(1)), p), DomainError);
  EXPECT_THROW(eval(Expr(1.0) / x(2), p), DomainError);
  const Tape tape(kSpace, sqrt(x(1)));
  std::vector<double> out(1);
  std::vector<double> scratch(tape.scratch_size());
  const Tape::Status st = tape.run(p.coords(), out, scratch);
  EXPECT_FALSE(st.ok);
  EXPECT_GE(st.failed_at, 0);
}
