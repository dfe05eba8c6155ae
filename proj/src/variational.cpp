#include "jetvar/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jetvar/errors.hpp"
#include "jetvar/tape.hpp"

namespace jetvar {
namespace {

Expr dy(const Expr& f, int order, int i) { return diff(f, CoordId{order, i}); }

Expr tulczyjew_power(const JetSpace& space, Expr e, int m) {
  for (int j = 0; j < m; ++j) e = tulczyjew(space, e);
  return e;
}

std::vector<Expr> el_components(const Lagrangian& l, const Semispray& s) {
  const int n = l.n();
  std::vector<Expr> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    Expr acc = dy(l.function(), 0, i);
    for (int b = 1; b <= l.k(); ++b) {
      const double c = (b % 2 == 0 ? 1.0 : -1.0) / factorial(b);
      acc += Expr(c) * semispray_power(s, dy(l.function(), b, i), b);
    }
    out[static_cast<std::size_t>(i - 1)] = acc;
  }
  return out;
}

// Ranks of a dense symbolic square array at every point.
std::pair<int, int> rank_range(std::span<const Expr> entries, std::size_t dim, const PointSet& points,
                               double rank_tol) {
  Matrix values = evaluate(entries, points);
  int lo = std::numeric_limits<int>::max();
  int hi = 0;
  for (std::size_t p = 0; p < values.rows; ++p) {
    Matrix m(dim, dim);
    std::copy(values.row(p).begin(), values.row(p).end(), m.data.begin());
    const int rk = numeric_rank(m, rank_tol);
    lo = std::min(lo, rk);
    hi = std::max(hi, rk);
  }
  if (values.rows == 0) lo = 0;
  return {lo, hi};
}

}  // namespace

Lagrangian::Lagrangian(int n, int k, Expr l) : space_(lagrangian_space(n, std::max(k, 1))), k_(k), l_(std::move(l)) {
  if (k < 1) throw std::invalid_argument("Lagrangian order must be at least 1");
  if (l_.max_order() > k)
    throw std::invalid_argument("Lagrangian of order " + std::to_string(k) + " depends on y" +
                                std::to_string(l_.max_order()));
}

SemiBasicForm poincare_cartan(const Lagrangian& l) {
  const JetSpace& space = l.space();
  const int k = l.k();
  OneForm theta(space);
  for (int i = 1; i <= l.n(); ++i)
    for (int a = 1; a <= k; ++a) {
      Expr acc;
      for (int b = a; b <= k; ++b) {
        const double c = ((b - a) % 2 == 0 ? 1.0 : -1.0) / factorial(b);
        acc += Expr(c) * tulczyjew_power(space, dy(l.function(), b, i), b - a);
      }
      theta[CoordId{a - 1, i}] = Expr(factorial(a - 1)) * acc;
    }
  return {std::move(theta), k};
}

TwoForm pc_two_form(const Lagrangian& l) { return Expr(-1.0) * exterior_d(poincare_cartan(l).form); }

Expr energy(const Lagrangian& l) {
  const JetSpace& space = l.space();
  Expr e = -l.function();
  for (int a = 1; a <= l.k(); ++a) {
    const double c = (a % 2 == 1 ? 1.0 : -1.0) / factorial(a);
    e += Expr(c) * tulczyjew_power(space, apply(liouville(space, a), l.function()), a - 1);
  }
  return e;
}

ExprMatrix hessian(const Lagrangian& l) {
  const auto n = static_cast<std::size_t>(l.n());
  ExprMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Expr gi = dy(l.function(), l.k(), static_cast<int>(i) + 1);
    for (std::size_t j = i; j < n; ++j) {
      h(i, j) = dy(gi, l.k(), static_cast<int>(j) + 1);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

RegularityReport regularity_check(const Lagrangian& l, const PointSet& points, double rank_tol) {
  if (points.empty()) throw std::invalid_argument("regularity_check needs at least one point");
  const ExprMatrix h = hessian(l);
  auto [lo, hi] = rank_range(h.entries(), h.rows(), points, rank_tol);
  return {lo == l.n(), lo, hi};
}

int pc_two_form_rank(const Lagrangian& l, const JetPoint& point, double rank_tol) {
  const TwoForm omega = pc_two_form(l);
  PointSet one(point.space());
  one.push_back(point);
  return rank_range(omega.entries(), static_cast<std::size_t>(omega.dim()), one, rank_tol).first;
}

Expr semispray_power(const Semispray& s, const Expr& e, int m) {
  Expr out = e;
  for (int j = 0; j < m; ++j) out = semispray_apply(s, out);
  return out;
}

OneForm el_residual(const Lagrangian& l, const Semispray& s) {
  if (!(s.space() == l.space())) throw std::invalid_argument("semispray and Lagrangian live on different jet spaces");
  OneForm out(l.space());
  auto comps = el_components(l, s);
  for (int i = 1; i <= l.n(); ++i) out[CoordId{0, i}] = comps[static_cast<std::size_t>(i - 1)];
  return out;
}

ElSystem extract_el_system(const Lagrangian& l) {
  const int n = l.n();
  const auto un = static_cast<std::size_t>(n);
  ElSystem sys{ExprMatrix(un, un), el_components(l, Semispray(l.space()))};
  for (int j = 0; j < n; ++j) {
    std::vector<Expr> unit(un);
    unit[static_cast<std::size_t>(j)] = Expr(1.0);
    auto rj = el_components(l, Semispray(l.space(), std::move(unit)));
    for (std::size_t i = 0; i < un; ++i) sys.a(i, static_cast<std::size_t>(j)) = sys.b[i] - rj[i];
  }
  return sys;
}

double el_coefficient(int k) noexcept { return (k % 2 == 0 ? 1.0 : -1.0) * binomial(2 * k, k); }

DerivedSemispray derive_semispray(const Lagrangian& l, const PointSet& points, double tol) {
  const RegularityReport reg = regularity_check(l, points);
  if (!reg.regular)
    throw SingularHessian("Hessian has rank " + std::to_string(reg.min_rank) + " < " + std::to_string(l.n()) +
                          " at a sampled point");

  const ExprMatrix g = hessian(l);
  const ExprMatrix a = Expr(el_coefficient(l.k())) * g;
  const ElSystem sys = extract_el_system(l);
  const double dev = max_deviation(sys.a.entries(), a.entries(), points);
  if (dev > tol)
    throw SystemMismatch("extracted Euler-Lagrange system deviates from (-1)^k binom(2k,k) g by " +
                         std::to_string(dev));

  return {Semispray(l.space(), solve(a, sys.b)), dev, reg.min_rank};
}

OneForm tabg_rhs(const Semispray& s, const Expr& f, int k, int gamma) {
  const JetSpace& space = s.space();
  if (gamma < 0 || gamma >= k) throw std::out_of_range("reconstruction index gamma outside [0, k-1]");
  const VectorField sf = s.field();
  OneForm out(space);
  for (int b = 1; b <= k - gamma; ++b) {
    OneForm term = d_J_alpha(space, f, b + gamma).form;
    for (int m = 0; m < b - 1; ++m) term = lie_derivative(sf, term);
    const double c = (b % 2 == 1 ? 1.0 : -1.0) * factorial(gamma) / factorial(b + gamma);
    out = out + Expr(c) * term;
  }
  return out;
}

PcCharacterization verify_pc_characterization(const SemiBasicForm& theta, const Semispray& s, const PointSet& points,
                                              double tol, const std::optional<Expr>& f) {
  const JetSpace& space = s.space();
  if (!(theta.form.space() == space)) throw std::invalid_argument("form and semispray live on different jet spaces");
  PcCharacterization rep;
  const int k = theta.order;

  rep.semi_basic = max_abs_value(semi_basic_violation(theta.form, k), points);

  const OneForm ls = lie_derivative(s.field(), theta.form);
  rep.closedness = max_abs_value(exterior_d(ls).entries(), points);

  const TwoForm dtheta = exterior_d(theta.form);
  rep.min_rank = rank_range(dtheta.entries(), static_cast<std::size_t>(space.dim()), points, 1e-8).first;
  rep.expected_rank = 2 * k * space.n();

  bool ok = rep.semi_basic <= tol && rep.closedness <= tol && rep.min_rank == rep.expected_rank;

  if (f) {
    const OneForm diffform = ls - exterior_d(space, *f);
    rep.order_one = max_abs_value(semi_basic_violation(diffform, 1), points);
    ok = ok && *rep.order_one <= tol;
    for (int gamma = 0; gamma < k; ++gamma) {
      const OneForm lhs = gamma == 0 ? theta.form : i_J_alpha(theta.form, gamma);
      const OneForm rhs = tabg_rhs(s, *f, k, gamma);
      const double dev = max_deviation(lhs.components(), rhs.components(), points);
      rep.reconstruction.push_back(dev);
      ok = ok && dev <= tol;
    }
  }
  rep.passed = ok;
  return rep;
}

}  // namespace jetvar
