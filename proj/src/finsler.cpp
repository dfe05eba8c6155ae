#include "jetvar/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jetvar/errors.hpp"

namespace jetvar {
namespace {

// Pointwise deviation of two covectors relative to the larger of their sup
// norms; components that vanish exactly still get a meaningful scale.
double covector_deviation(const OneForm& a, const OneForm& b, const PointSet& points) {
  const Matrix va = evaluate(a.components(), points);
  const Matrix vb = evaluate(b.components(), points);
  double worst = 0.0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t c = 0; c < va.cols; ++c) {
      diff = std::max(diff, std::abs(va(p, c) - vb(p, c)));
      scale = std::max({scale, std::abs(va(p, c)), std::abs(vb(p, c))});
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

struct Ratio {
  double proportionality = 0.0;
  std::vector<double> p;
};

// Reads v^{(order)i} = P y^{(1)i} at every point. `values` holds one row per
// point; `column(i)` is the column of the i-th component (1-based). The
// deviation is taken per point relative to the sup norm of both vectors.
template <class Column>
Ratio ratio_to_velocity(const Matrix& values, const PointSet& points, int n, Column column) {
  Ratio out;
  const JetSpace& space = points.space();
  for (std::size_t p = 0; p < values.rows; ++p) {
    auto pt = points.row(p);
    int best = 1;
    for (int i = 2; i <= n; ++i)
      if (std::abs(pt[space.flat({1, i})]) > std::abs(pt[space.flat({1, best})])) best = i;
    const double denom = pt[space.flat({1, best})];
    const double ratio = values(p, column(best)) / denom;
    out.p.push_back(ratio);
    double diff = 0.0, scale = 1.0;
    for (int i = 1; i <= n; ++i) {
      const double v = values(p, column(i));
      const double w = ratio * pt[space.flat({1, i})];
      diff = std::max(diff, std::abs(v - w));
      scale = std::max({scale, std::abs(v), std::abs(w)});
    }
    out.proportionality = std::max(out.proportionality, diff / scale);
  }
  return out;
}

VectorField liouville_or_semispray(const Semispray& s, int alpha) {
  return alpha == 0 ? s.field() : liouville(s.space(), alpha);
}

}  // namespace

ZermeloReport zermelo_check(const FinslerCandidate& f, const PointSet& points, double tol) {
  const JetSpace& space = f.space();
  ZermeloReport rep;
  const Expr c1f = apply(liouville(space, 1), f.function());
  const Expr lhs[] = {c1f};
  const Expr rhs[] = {f.function()};
  rep.c1_residual = max_deviation(lhs, rhs, points);
  bool ok = rep.c1_residual <= tol;
  for (int a = 2; a <= f.k(); ++a) {
    const Expr caf[] = {apply(liouville(space, a), f.function())};
    rep.calpha_residual.push_back(max_abs_value(caf, points));
    ok = ok && rep.calpha_residual.back() <= tol;
  }
  rep.passed = ok;
  return rep;
}

ExprMatrix angular_tensor(const FinslerCandidate& f) {
  const ExprMatrix hess = hessian(f);
  return pow(f.function(), Expr(2.0 * f.k() - 1.0)) * hess;
}

FinslerValidation finsler_validate(const FinslerCandidate& f, const PointSet& points, double tol) {
  if (points.empty()) throw std::invalid_argument("finsler_validate needs at least one point");
  FinslerValidation rep;
  rep.zermelo_ok = zermelo_check(f, points, tol).passed;

  const ExprMatrix h = angular_tensor(f);
  std::vector<Expr> outputs{f.function()};
  outputs.insert(outputs.end(), h.entries().begin(), h.entries().end());
  const Matrix values = evaluate(outputs, points);

  rep.min_value = std::numeric_limits<double>::infinity();
  rep.min_rank = std::numeric_limits<int>::max();
  for (std::size_t p = 0; p < values.rows; ++p) {
    rep.min_value = std::min(rep.min_value, values(p, 0));
    const Matrix hp = h.from_values(values.row(p).subspan(1));
    const int rk = numeric_rank(hp);
    rep.min_rank = std::min(rep.min_rank, rk);
    rep.max_rank = std::max(rep.max_rank, rk);
  }
  rep.positivity_ok = rep.min_value > 0.0;
  rep.is_finsler =
      rep.zermelo_ok && rep.positivity_ok && rep.min_rank == f.n() - 1 && rep.max_rank == f.n() - 1;
  return rep;
}

FormHomogeneity homogeneous_form_check(const OneForm& theta, const PointSet& points, double tol) {
  const JetSpace& space = theta.space();
  FormHomogeneity rep;
  bool ok = true;
  for (int a = 1; a <= space.r(); ++a) {
    const VectorField c = liouville(space, a);
    const Expr contraction[] = {interior(c, theta)};
    rep.interior.push_back(max_abs_value(contraction, points));
    rep.lie.push_back(max_abs_value(lie_derivative(c, theta).components(), points));
    ok = ok && rep.interior.back() <= tol && rep.lie.back() <= tol;
  }
  rep.homogeneous = ok;
  return rep;
}

HomogeneityReport semispray_homogeneity_check(const Semispray& s, const PointSet& points, double tol) {
  const JetSpace& space = s.space();
  const int n = space.n();
  const int r = space.r();
  const VectorField sf = s.field();
  HomogeneityReport rep;
  rep.homogeneous = true;
  for (int a = 1; a <= r; ++a) {
    const VectorField residual =
        lie_bracket(liouville(space, a), sf) - Expr(static_cast<double>(a)) * liouville_or_semispray(s, a - 1);
    const Matrix values = evaluate(residual.components(), points);

    AlphaHomogeneity h;
    h.alpha = a;
    for (std::size_t p = 0; p < values.rows; ++p)
      for (int c = 0; c < r * n; ++c) h.lower_order = std::max(h.lower_order, std::abs(values(p, static_cast<std::size_t>(c))));
    Ratio ratio = ratio_to_velocity(values, points, n, [&](int i) { return static_cast<std::size_t>(space.flat({r, i})); });
    h.proportionality = ratio.proportionality;
    h.p_samples = std::move(ratio.p);
    h.proportional = h.lower_order <= tol && h.proportionality <= tol;
    if (!h.proportional && rep.failing_alpha == 0) rep.failing_alpha = a;
    rep.homogeneous = rep.homogeneous && h.proportional;
    rep.alphas.push_back(std::move(h));
  }

  const SprayReport spray = spray_check(s, points, tol);
  rep.spray = rep.homogeneous && spray.spray;
  return rep;
}

void require_homogeneous(const HomogeneityReport& report) {
  if (!report.homogeneous)
    throw NotProportional("[C_" + std::to_string(report.failing_alpha) +
                          ", S] - alpha C_{alpha-1} is not a multiple of C_r");
}

SprayReport spray_check(const Semispray& s, const PointSet& points, double tol) {
  const JetSpace& space = s.space();
  const VectorField sf = s.field();
  SprayReport rep;
  rep.c1_residual = max_abs_value((lie_bracket(liouville(space, 1), sf) - sf).components(), points);
  rep.spray = rep.c1_residual <= tol;
  if (space.r() >= 2) {
    const VectorField c2 = lie_bracket(liouville(space, 2), sf) - Expr(2.0) * liouville(space, 1);
    rep.c2_residual = max_abs_value(c2.components(), points);
    rep.spray = rep.spray && *rep.c2_residual <= tol;
  }
  return rep;
}

ProjectiveReport projective_equivalent(const Semispray& s1, const Semispray& s2, const PointSet& points, double tol) {
  if (!(s1.space() == s2.space())) throw std::invalid_argument("semisprays live on different jet spaces");
  const int n = s1.space().n();
  std::vector<Expr> d;
  for (int i = 1; i <= n; ++i) d.push_back(s1.coefficient(i) - s2.coefficient(i));
  const Matrix values = evaluate(d, points);
  Ratio ratio = ratio_to_velocity(values, points, n, [](int i) { return static_cast<std::size_t>(i - 1); });
  return {ratio.proportionality <= tol, ratio.proportionality, std::move(ratio.p)};
}

MetrizabilityReport metrizability_residual(const Semispray& s, const FinslerCandidate& f, const PointSet& points,
                                           double tol) {
  if (!(s.space() == f.space())) throw std::invalid_argument("semispray and Finsler function live on different spaces");
  const VectorField sf = s.field();
  const OneForm theta = poincare_cartan(f).form;
  MetrizabilityReport rep;
  const OneForm lie = lie_derivative(sf, theta);
  rep.oneform_residual = covector_deviation(lie, exterior_d(f.space(), f.function()), points);
  // i_S omega = d(i_S theta) - L_S theta
  rep.two_form_residual = covector_deviation(exterior_d(f.space(), interior(sf, theta)), lie, points);
  rep.semispray_homogeneous = semispray_homogeneity_check(s, points, std::max(tol, 1e-8)).homogeneous;
  rep.passed = rep.oneform_residual <= tol && rep.two_form_residual <= tol;
  return rep;
}

FinslerEnergyReport finsler_energy_checks(const FinslerCandidate& f, const Semispray& s, const PointSet& points,
                                          double tol) {
  const JetSpace& space = f.space();
  const OneForm theta = poincare_cartan(f).form;
  FinslerEnergyReport rep;
  const Expr lhs[] = {interior(s.field(), theta)};
  const Expr rhs[] = {f.function()};
  rep.contraction = max_deviation(lhs, rhs, points);
  const Expr e[] = {energy(f)};
  rep.energy = max_abs_value(e, points);
  bool ok = rep.contraction <= tol && rep.energy <= tol;
  const TwoForm omega = Expr(-1.0) * exterior_d(theta);
  for (int a = 1; a <= space.r(); ++a) {
    rep.liouville.push_back(max_abs_value(interior(liouville(space, a), omega).components(), points));
    ok = ok && rep.liouville.back() <= tol;
  }
  rep.passed = ok;
  return rep;
}

Semispray metrizing_semispray(const FinslerCandidate& f) {
  const auto n = static_cast<std::size_t>(f.n());
  ExprMatrix a = Expr(el_coefficient(f.k())) * hessian(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) += Expr::coord(1, static_cast<int>(i) + 1) * Expr::coord(1, static_cast<int>(j) + 1);
  const OneForm residual = el_residual(f, Semispray(f.space()));
  std::vector<Expr> b;
  for (int i = 1; i <= f.n(); ++i) b.push_back(residual[CoordId{0, i}]);
  return Semispray(f.space(), solve(a, b));
}

}  // namespace jetvar
