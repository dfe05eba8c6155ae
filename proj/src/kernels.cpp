#include "jetvar/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace jetvar::kernels {
namespace {

void check_space(const Tape& tape, const PointSet& points) {
  if (!(tape.space() == points.space())) throw std::invalid_argument("tape and point set live on different jet spaces");
}

[[noreturn]] void fail_at(const Tape& tape, const PointSet& points, std::size_t i) {
  // Re-run the failing point through the throwing path for a uniform message.
  tape.eval(points.row(i));
  throw std::logic_error("kernel reported a failure that did not reproduce");
}

}  // namespace

Matrix evaluate_serial(const Tape& tape, const PointSet& points) {
  check_space(tape, points);
  Matrix out(points.size(), tape.num_outputs());
  std::vector<double> scratch(tape.scratch_size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!tape.run(points.row(i), out.row(i), scratch).ok) fail_at(tape, points, i);
  }
  return out;
}

Matrix evaluate(const Tape& tape, const PointSet& points) {
  check_space(tape, points);
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  Matrix out(points.size(), tape.num_outputs());
  std::ptrdiff_t first_bad = n;

#pragma omp parallel
  {
    std::vector<double> scratch(tape.scratch_size());
#pragma omp for schedule(static) reduction(min : first_bad)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto row = static_cast<std::size_t>(i);
      if (!tape.run(points.row(row), out.row(row), scratch).ok) first_bad = std::min(first_bad, i);
    }
  }
  if (first_bad < n) fail_at(tape, points, static_cast<std::size_t>(first_bad));
  return out;
}

double max_relative_deviation_serial(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("deviation of differently sized arrays");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, relative_deviation(a[i], b[i]));
  return worst;
}

double max_relative_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("deviation of differently sized arrays");
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    worst = std::max(worst, relative_deviation(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
  }
  return worst;
}

double max_abs_serial(std::span<const double> a) {
  double worst = 0.0;
  for (double v : a) worst = std::max(worst, std::abs(v));
  return worst;
}

double max_abs(std::span<const double> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::ptrdiff_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[static_cast<std::size_t>(i)]));
  return worst;
}

}  // namespace jetvar::kernels
