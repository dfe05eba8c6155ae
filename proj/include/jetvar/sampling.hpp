#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/numeric.hpp"

namespace jetvar {

inline constexpr double kDefaultTolerance = 1e-9;
/// ||y^{(1)}||_inf floor for points drawn from T^r_0M.
inline constexpr double kRegularFloor = 0.1;

/// Deterministic uniform draws in [-1, 1) from a 64-bit Mersenne twister.
/// The mapping from engine output to double is done by hand so the stream is
/// identical across standard libraries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
    return 2.0 * u - 1.0;
  }
  std::uint64_t bits() noexcept { return engine_(); }
  int below(int bound) noexcept { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }

 private:
  std::mt19937_64 engine_;
};

using PointFilter = std::function<bool(std::span<const double>)>;

struct SampleOptions {
  /// Draw from T^r_0M: resample until ||y^{(1)}||_inf >= kRegularFloor.
  bool regular = false;
  /// Extra acceptance test applied after the regularity floor.
  PointFilter accept;
  /// Give up after this many rejected draws in a row.
  int max_attempts = 100000;
};

/// `count` points with every coordinate uniform in [-1, 1), drawn serially
/// so the set depends only on (space, count, seed, options).
PointSet sample_points(const JetSpace& space, std::size_t count, std::uint64_t seed, const SampleOptions& options = {});

inline PointSet sample_regular(const JetSpace& space, std::size_t count, std::uint64_t seed, PointFilter accept = {}) {
  return sample_points(space, count, seed, SampleOptions{true, std::move(accept)});
}

/// Values of `exprs` at `points` (row per point, column per expression).
Matrix evaluate(std::span<const Expr> exprs, const PointSet& points);

/// max relative deviation between lhs[k] and rhs[k] over all points.
double max_deviation(std::span<const Expr> lhs, std::span<const Expr> rhs, const PointSet& points);

/// max |e| over all expressions and points.
double max_abs_value(std::span<const Expr> exprs, const PointSet& points);

struct NumericEquality {
  bool equal = false;
  double max_dev = 0.0;
};

/// Compares two expressions at `samples` random points of `space` using
/// relative deviation |a-b| / max(1, |a|, |b|).
NumericEquality equal_numeric(const Expr& a, const Expr& b, const JetSpace& space, int samples,
                              double tol = kDefaultTolerance, std::uint64_t seed = 0);

}  // namespace jetvar
