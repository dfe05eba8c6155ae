#pragma once

#include <optional>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/exprmatrix.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/jetspace.hpp"
#include "jetvar/sampling.hpp"

namespace jetvar {

/// Ambient space of an order-k Lagrangian: T^{2k-1}M.
inline JetSpace lagrangian_space(int n, int k) { return JetSpace(n, std::max(2 * k - 1, 1)); }

/// An order-k Lagrangian L(x, y^{(1)}, ..., y^{(k)}) viewed on T^{2k-1}M.
class Lagrangian {
 public:
  /// Throws std::invalid_argument when k < 1 or L depends on orders above k.
  Lagrangian(int n, int k, Expr l);

  int n() const noexcept { return space_.n(); }
  int k() const noexcept { return k_; }
  const Expr& function() const noexcept { return l_; }
  const JetSpace& space() const noexcept { return space_; }

 private:
  JetSpace space_;
  int k_;
  Expr l_;
};

/// Poincare-Cartan form theta_L, semi-basic of order k:
/// theta_{(a-1)i} = (a-1)! sum_{b=a}^{k} (-1)^{b-a}/b! d_T^{b-a}(dL/dy^{(b)i}).
SemiBasicForm poincare_cartan(const Lagrangian& l);
/// omega_L = -d theta_L.
TwoForm pc_two_form(const Lagrangian& l);

/// E_L = sum_a (-1)^{a-1}/a! d_T^{a-1} C_a(L) - L.
Expr energy(const Lagrangian& l);

/// g_ij = d^2 L / dy^{(k)i} dy^{(k)j}.
ExprMatrix hessian(const Lagrangian& l);

struct RegularityReport {
  bool regular = false;
  int min_rank = 0;
  int max_rank = 0;
};

/// Numeric rank of the Hessian at every point; regular iff it is n everywhere.
RegularityReport regularity_check(const Lagrangian& l, const PointSet& points, double rank_tol = 1e-8);

/// Numeric rank of omega_L at one point.
int pc_two_form_rank(const Lagrangian& l, const JetPoint& point, double rank_tol = 1e-8);

/// S^m(e), m-fold application of the semispray to a function.
Expr semispray_power(const Semispray& s, const Expr& e, int m);

/// Euler-Lagrange residual, a 1-form with dx components only:
/// dL/dx^i + sum_b (-1)^b/b! S^b(dL/dy^{(b)i}).
OneForm el_residual(const Lagrangian& l, const Semispray& s);

/// The residual is affine in G: residual = b - A G.
struct ElSystem {
  ExprMatrix a;
  std::vector<Expr> b;
};

/// A and b read off the residual by substituting G = 0 and G = e_j.
ElSystem extract_el_system(const Lagrangian& l);

/// (-1)^k binom(2k, k): the closed-form relation A = c_k g.
double el_coefficient(int k) noexcept;

struct DerivedSemispray {
  Semispray semispray;
  /// max relative deviation between the extracted A and c_k g.
  double system_deviation = 0.0;
  int hessian_rank = 0;
};

/// Canonical semispray of a regular Lagrangian, G = (c_k g)^{-1} b.
/// Throws SingularHessian when the Hessian is rank deficient at a sample
/// point and SystemMismatch when A departs from c_k g by more than `tol`.
DerivedSemispray derive_semispray(const Lagrangian& l, const PointSet& points, double tol = kDefaultTolerance);

/// Right-hand side of the reconstruction formula for i_{J^gamma} theta from f:
/// gamma! sum_{b=1}^{k-gamma} (-1)^{b-1}/(b+gamma)! L_S^{b-1} d_{J^{b+gamma}} f.
OneForm tabg_rhs(const Semispray& s, const Expr& f, int k, int gamma);

struct PcCharacterization {
  /// max |theta| over components of order >= declared order.
  double semi_basic = 0.0;
  /// max |d(L_S theta)|.
  double closedness = 0.0;
  int min_rank = 0;
  int expected_rank = 0;
  /// Present when f is given: max |L_S theta - df| over components of order >= 1.
  std::optional<double> order_one;
  /// Present when f is given: deviation of i_{J^gamma} theta from tabg_rhs, gamma = 0..k-1.
  std::vector<double> reconstruction;
  bool passed = false;
};

/// Checks that theta, semi-basic of order k, characterizes S as Lagrangian:
/// rank d theta = 2kn and L_S theta closed. With f also checks that
/// L_S theta - df is semi-basic of order 1 and the reconstruction formulas.
PcCharacterization verify_pc_characterization(const SemiBasicForm& theta, const Semispray& s, const PointSet& points,
                                              double tol = kDefaultTolerance,
                                              const std::optional<Expr>& f = std::nullopt);

}  // namespace jetvar
