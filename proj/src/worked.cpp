#include "jetvar/worked.hpp"

#include <charconv>
#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "jetvar/errors.hpp"
#include "jetvar/tape.hpp"

namespace jetvar {
namespace {

std::vector<Expr> base_entries(const ExprMatrix& g) { return {g.entries().begin(), g.entries().end()}; }

PointSet base_samples(int n, int samples, std::uint64_t seed) { return sample_points(JetSpace(n, 1), samples, seed); }

// Entries of a symmetric n x n matrix at one point; Cholesky factorization.
bool cholesky_ok(const Matrix& a) {
  const std::size_t n = a.rows;
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > 0.0)) return false;
    l[j * n + j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / l[j * n + j];
    }
  }
  return true;
}

void append_number(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

Metric::Metric(ExprMatrix g) : g_(std::move(g)) {
  if (g_.rows() == 0 || g_.rows() != g_.cols()) throw std::invalid_argument("metric must be a nonempty square matrix");
  for (const Expr& e : g_.entries())
    if (e.max_order() > 0) throw std::invalid_argument("metric entries may depend on base coordinates only");
  const int dim = static_cast<int>(g_.rows());
  std::vector<Expr> upper;
  std::vector<Expr> lower;
  for (std::size_t i = 0; i < g_.rows(); ++i)
    for (std::size_t j = i + 1; j < g_.cols(); ++j) {
      upper.push_back(g_(i, j));
      lower.push_back(g_(j, i));
    }
  if (!upper.empty() && max_deviation(upper, lower, base_samples(dim, 20, 0)) > 1e-12)
    throw std::invalid_argument("metric is not symmetric");
}

Metric Metric::euclidean(int n) { return Metric(ExprMatrix::identity(static_cast<std::size_t>(n))); }

bool Metric::positive_definite_sampled(int samples, std::uint64_t seed) const {
  const PointSet pts = base_samples(n(), samples, seed);
  const Matrix values = evaluate(base_entries(g_), pts);
  for (std::size_t p = 0; p < values.rows; ++p)
    if (!cholesky_ok(g_.from_values(values.row(p)))) return false;
  return true;
}

Christoffel christoffel(const Metric& g) {
  const int n = g.n();
  const auto un = static_cast<std::size_t>(n);
  const ExprMatrix& m = g.matrix();

  ExprMatrix inv(un, un);
  if (m.is_constant()) {
    Matrix numeric;
    if (!invert(m.constant_values(), numeric)) throw SingularMetric("constant metric is singular");
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) inv(i, j) = Expr(numeric(i, j));
  } else {
    const Expr det = determinant(m);
    const Expr dets[] = {det};
    const PointSet pts = base_samples(n, 100, 0);
    const Matrix values = evaluate(dets, pts);
    for (double v : values.data)
      if (std::abs(v) < 1e-14) throw SingularMetric("metric determinant vanishes at a sampled base point");
    const ExprMatrix adj = adjugate(m);
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) inv(i, j) = adj(i, j) / det;
  }

  // dg[l][j][k] = d g_lj / dx^k
  std::vector<std::vector<std::vector<Expr>>> dg(un, std::vector<std::vector<Expr>>(un, std::vector<Expr>(un)));
  for (std::size_t l = 0; l < un; ++l)
    for (std::size_t j = 0; j < un; ++j)
      for (std::size_t k = 0; k < un; ++k) dg[l][j][k] = diff(m(l, j), CoordId{0, static_cast<int>(k) + 1});

  Christoffel gamma(un, std::vector<std::vector<Expr>>(un, std::vector<Expr>(un)));
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j)
      for (std::size_t k = j; k < un; ++k) {
        Expr acc;
        for (std::size_t l = 0; l < un; ++l) {
          if (inv(i, l).is_zero()) continue;
          const Expr bracket = dg[l][j][k] + dg[l][k][j] - dg[j][k][l];
          if (bracket.is_zero()) continue;
          acc += inv(i, l) * bracket;
        }
        gamma[i][j][k] = Expr(0.5) * acc;
        gamma[i][k][j] = gamma[i][j][k];
      }
  return gamma;
}

Expr metric_product(const Metric& g, const std::vector<Expr>& a, const std::vector<Expr>& b) {
  Expr acc;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const Expr& gij = g(i, j);
      if (gij.is_zero()) continue;
      acc += gij * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  return acc;
}

std::vector<Expr> jet_vector(int n, int order) {
  std::vector<Expr> v;
  for (int i = 1; i <= n; ++i) v.push_back(Expr::coord(order, i));
  return v;
}

Lagrangian build_l1(const Metric& g) {
  const auto y = jet_vector(g.n(), 1);
  return Lagrangian(g.n(), 1, Expr(0.5) * metric_product(g, y, y));
}

FinslerCandidate build_f1(const Metric& g) {
  const auto y = jet_vector(g.n(), 1);
  return FinslerCandidate(g.n(), 1, sqrt(metric_product(g, y, y)));
}

std::vector<Expr> geodesic_spray_coefficients(const Metric& g) {
  const Christoffel gamma = christoffel(g);
  const int n = g.n();
  std::vector<Expr> out;
  for (int i = 0; i < n; ++i) {
    Expr acc;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Expr& c = gamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        acc += c * Expr::coord(1, j + 1) * Expr::coord(1, k + 1);
      }
    out.push_back(Expr(0.5) * acc);
  }
  return out;
}

std::vector<Expr> build_z2(const Metric& g) {
  const auto half_gamma = geodesic_spray_coefficients(g);
  std::vector<Expr> z;
  for (int i = 1; i <= g.n(); ++i) z.push_back(Expr::coord(2, i) + half_gamma[static_cast<std::size_t>(i - 1)]);
  return z;
}

Lagrangian build_l2(const Metric& g) {
  const auto z = build_z2(g);
  return Lagrangian(g.n(), 2, Expr(0.5) * metric_product(g, z, z));
}

FinslerCandidate build_f2(const Metric& g) {
  const auto y = jet_vector(g.n(), 1);
  const auto z = build_z2(g);
  const Expr yy = metric_product(g, y, y);
  const Expr zz = metric_product(g, z, z);
  const Expr yz = metric_product(g, y, z);
  return FinslerCandidate(g.n(), 2, (zz * yy - yz * yz) / (yy * yy * sqrt(yy)));
}

PointFilter transverse_acceleration_filter(const Metric& g, const JetSpace& space, double floor) {
  const auto y = jet_vector(g.n(), 1);
  const auto z = build_z2(g);
  const Expr yy = metric_product(g, y, y);
  const Expr yz = metric_product(g, y, z);
  const Expr zz = metric_product(g, z, z);
  // |z_perp|^2 = |z|^2 - <y,z>^2/|y|^2
  const Expr outs[] = {yy, yz, zz};
  auto tape = std::make_shared<const Tape>(space, outs);
  return [tape, floor](std::span<const double> p) {
    std::vector<double> scratch(tape->scratch_size());
    double v[3];
    if (!tape->run(p, v, scratch).ok || v[0] <= 0.0) return false;
    const double perp2 = v[2] - v[1] * v[1] / v[0];
    return perp2 >= floor * floor;
  };
}

Trajectory integrate(const Semispray& s, const JetPoint& p0, double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("integrate needs at least one step");
  if (!(p0.space() == s.space())) throw std::invalid_argument("initial point and semispray live on different spaces");
  const JetSpace& space = s.space();
  const int n = space.n();
  const int r = space.r();
  const auto dim = static_cast<std::size_t>(space.dim());
  const Tape tape(space, s.coefficients());
  std::vector<double> scratch(tape.scratch_size());
  std::vector<double> g(static_cast<std::size_t>(n));

  int step_index = 0;
  auto rhs = [&](std::span<const double> z, std::span<double> dz) {
    if (!tape.run(z, g, scratch).ok)
      throw DomainError("semispray left its domain after step " + std::to_string(step_index) +
                            " (last good state kept)",
                        std::vector<double>(z.begin(), z.end()));
    for (int o = 0; o < r; ++o)
      for (int i = 1; i <= n; ++i)
        dz[static_cast<std::size_t>(space.flat({o, i}))] = (o + 1.0) * z[static_cast<std::size_t>(space.flat({o + 1, i}))];
    for (int i = 1; i <= n; ++i)
      dz[static_cast<std::size_t>(space.flat({r, i}))] = -(r + 1.0) * g[static_cast<std::size_t>(i - 1)];
  };

  Trajectory traj(space);
  traj.step = (t1 - t0) / steps;
  const double h = traj.step;
  std::vector<double> z(p0.coords().begin(), p0.coords().end());
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  traj.times.push_back(t0);
  traj.states.push_back(z);
  for (step_index = 0; step_index < steps; ++step_index) {
    rhs(z, k1);
    for (std::size_t a = 0; a < dim; ++a) tmp[a] = z[a] + 0.5 * h * k1[a];
    rhs(tmp, k2);
    for (std::size_t a = 0; a < dim; ++a) tmp[a] = z[a] + 0.5 * h * k2[a];
    rhs(tmp, k3);
    for (std::size_t a = 0; a < dim; ++a) tmp[a] = z[a] + h * k3[a];
    rhs(tmp, k4);
    for (std::size_t a = 0; a < dim; ++a) z[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    traj.times.push_back(t0 + (step_index + 1) * h);
    traj.states.push_back(z);
  }
  return traj;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  const JetSpace& space = traj.states.space();
  std::string line = "t";
  for (int a = 0; a < space.dim(); ++a) line += "," + coord_name(space.coord(a));
  os << line << '\n';
  for (std::size_t p = 0; p < traj.states.size(); ++p) {
    line.clear();
    append_number(line, traj.times[p]);
    for (double v : traj.states.row(p)) {
      line += ',';
      append_number(line, v);
    }
    os << line << '\n';
  }
}

}  // namespace jetvar
