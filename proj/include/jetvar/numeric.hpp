#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace jetvar {

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }

  std::span<const double> row(std::size_t r) const noexcept { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) noexcept { return {data.data() + r * cols, cols}; }
};

/// Deviation of a from b relative to max(1, |a|, |b|).
inline double relative_deviation(double a, double b) noexcept {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Rank by Gaussian elimination with full pivoting; a pivot counts when its
/// magnitude exceeds `rel_threshold * max|entry|`. The zero matrix has rank 0.
int numeric_rank(const Matrix& m, double rel_threshold = 1e-8);

/// Solves A x = b (A square) by partial-pivot elimination. Returns false if
/// a pivot falls below `rel_threshold * max|A|`.
bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x, double rel_threshold = 1e-12);

/// Inverse of a square matrix; false when singular to `rel_threshold`.
bool invert(const Matrix& a, Matrix& inverse, double rel_threshold = 1e-12);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k) noexcept;
double factorial(int n) noexcept;

}  // namespace jetvar
