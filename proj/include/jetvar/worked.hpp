#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jetvar/exprmatrix.hpp"
#include "jetvar/finsler.hpp"
#include "jetvar/jetspace.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

/// Riemannian metric g_ij(x): symmetric n x n, base coordinates only.
class Metric {
 public:
  /// Throws std::invalid_argument for non-square, asymmetric, or
  /// fiber-dependent input.
  explicit Metric(ExprMatrix g);

  static Metric euclidean(int n);

  int n() const noexcept { return static_cast<int>(g_.rows()); }
  const ExprMatrix& matrix() const noexcept { return g_; }
  const Expr& operator()(int i, int j) const { return g_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

  /// Samples base points (x uniform in [-1, 1)) and reports whether every
  /// sampled g was positive definite (Cholesky succeeds).
  bool positive_definite_sampled(int samples = 100, std::uint64_t seed = 0) const;

 private:
  ExprMatrix g_;
};

/// gamma[i][j][k] = gamma^{i+1}_{j+1,k+1}; symmetric in (j, k).
using Christoffel = std::vector<std::vector<std::vector<Expr>>>;

/// Levi-Civita symbols. Throws SingularMetric when det g vanishes at a
/// sampled base point.
Christoffel christoffel(const Metric& g);

/// g_ij a^i b^j for two coordinate-free vectors of expressions.
Expr metric_product(const Metric& g, const std::vector<Expr>& a, const std::vector<Expr>& b);

/// y^{(order)} as a vector of coordinate expressions.
std::vector<Expr> jet_vector(int n, int order);

/// L1 = 1/2 g_ij y^{(1)i} y^{(1)j}.
Lagrangian build_l1(const Metric& g);
/// F1 = sqrt(g_ij y^{(1)i} y^{(1)j}).
FinslerCandidate build_f1(const Metric& g);
/// Covariant acceleration z^{(2)i} = y^{(2)i} + 1/2 gamma^i_jk y^{(1)j} y^{(1)k}.
std::vector<Expr> build_z2(const Metric& g);
/// L2 = 1/2 g_ij z^{(2)i} z^{(2)j}, order 2.
Lagrangian build_l2(const Metric& g);
/// F2 = (|z|^2 |y|^2 - <y, z>^2) / |y|^5.
FinslerCandidate build_f2(const Metric& g);

/// Accepts points where the g-orthogonal part of z^{(2)} relative to
/// y^{(1)} has g-norm at least `floor`, keeping F2 strictly positive.
PointFilter transverse_acceleration_filter(const Metric& g, const JetSpace& space, double floor = 0.05);

/// The geodesic spray coefficients G^i = 1/2 gamma^i_jk y^{(1)j} y^{(1)k}.
std::vector<Expr> geodesic_spray_coefficients(const Metric& g);

struct Trajectory {
  std::vector<double> times;
  PointSet states;
  double step = 0.0;
  std::string method = "rk4";

  explicit Trajectory(JetSpace space) : states(space) {}
};

/// Classical RK4 on dx/dt = y^{(1)}, dy^{(a)}/dt = (a+1) y^{(a+1)},
/// dy^{(r)}/dt = -(r+1) G. Throws DomainError naming the last good step.
Trajectory integrate(const Semispray& s, const JetPoint& p0, double t0, double t1, int steps);

/// Header `t,x1..xn,y1_1..y<r>_n`, one row per state, 17 significant digits.
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace jetvar
