#include "jetvar/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "jetvar/kernels.hpp"
#include "jetvar/tape.hpp"

namespace jetvar {

PointSet sample_points(const JetSpace& space, std::size_t count, std::uint64_t seed, const SampleOptions& options) {
  SampleRng rng(seed);
  PointSet out(space);
  std::vector<double> p(static_cast<std::size_t>(space.dim()));
  for (std::size_t drawn = 0; drawn < count; ++drawn) {
    int attempts = 0;
    for (;;) {
      for (double& c : p) c = rng.uniform();
      bool ok = true;
      if (options.regular) {
        double inf = 0.0;
        for (int i = 1; i <= space.n(); ++i) inf = std::max(inf, std::abs(p[static_cast<std::size_t>(space.flat({1, i}))]));
        ok = inf >= kRegularFloor;
      }
      if (ok && options.accept) ok = options.accept(p);
      if (ok) break;
      if (++attempts >= options.max_attempts)
        throw std::runtime_error("point sampler rejected " + std::to_string(attempts) + " consecutive draws");
    }
    out.push_back(p);
  }
  return out;
}

Matrix evaluate(std::span<const Expr> exprs, const PointSet& points) {
  Tape tape(points.space(), exprs);
  return kernels::evaluate(tape, points);
}

double max_deviation(std::span<const Expr> lhs, std::span<const Expr> rhs, const PointSet& points) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("max_deviation: component count mismatch");
  std::vector<Expr> both(lhs.begin(), lhs.end());
  both.insert(both.end(), rhs.begin(), rhs.end());
  Matrix v = evaluate(both, points);
  const std::size_t k = lhs.size();
  std::vector<double> a;
  std::vector<double> b;
  a.reserve(points.size() * k);
  b.reserve(points.size() * k);
  for (std::size_t i = 0; i < v.rows; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      a.push_back(v(i, j));
      b.push_back(v(i, k + j));
    }
  return kernels::max_relative_deviation(a, b);
}

double max_abs_value(std::span<const Expr> exprs, const PointSet& points) {
  return kernels::max_abs(evaluate(exprs, points).data);
}

NumericEquality equal_numeric(const Expr& a, const Expr& b, const JetSpace& space, int samples, double tol,
                              std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("equal_numeric needs at least one sample");
  PointSet pts = sample_points(space, static_cast<std::size_t>(samples), seed);
  const Expr lhs[] = {a};
  const Expr rhs[] = {b};
  const double dev = max_deviation(lhs, rhs, pts);
  return {dev <= tol, dev};
}

}  // namespace jetvar
