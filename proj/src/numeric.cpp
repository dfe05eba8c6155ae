#include "jetvar/numeric.hpp"

#include <numeric>
#include <utility>

namespace jetvar {

int numeric_rank(const Matrix& m, double rel_threshold) {
  Matrix a = m;
  double scale = 0.0;
  for (double v : a.data) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double threshold = rel_threshold * scale;

  std::vector<std::size_t> rows(a.rows);
  std::vector<std::size_t> cols(a.cols);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);

  int rank = 0;
  const std::size_t steps = std::min(a.rows, a.cols);
  for (std::size_t k = 0; k < steps; ++k) {
    double best = 0.0;
    std::size_t pr = k;
    std::size_t pc = k;
    for (std::size_t i = k; i < a.rows; ++i)
      for (std::size_t j = k; j < a.cols; ++j)
        if (std::abs(a(rows[i], cols[j])) > best) {
          best = std::abs(a(rows[i], cols[j]));
          pr = i;
          pc = j;
        }
    if (best <= threshold) break;
    std::swap(rows[k], rows[pr]);
    std::swap(cols[k], cols[pc]);
    const double pivot = a(rows[k], cols[k]);
    for (std::size_t i = k + 1; i < a.rows; ++i) {
      const double f = a(rows[i], cols[k]) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k; j < a.cols; ++j) a(rows[i], cols[j]) -= f * a(rows[k], cols[j]);
    }
    ++rank;
  }
  return rank;
}

bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x, double rel_threshold) {
  const std::size_t n = a.rows;
  double scale = 0.0;
  for (double v : a.data) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= rel_threshold * scale) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return true;
}

bool invert(const Matrix& a, Matrix& inverse, double rel_threshold) {
  const std::size_t n = a.rows;
  inverse = Matrix(n, n);
  std::vector<double> e(n);
  std::vector<double> col;
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    if (!solve_linear(a, e, col, rel_threshold)) return false;
    for (std::size_t i = 0; i < n; ++i) inverse(i, j) = col[i];
  }
  return true;
}

double factorial(int n) noexcept {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace jetvar
