#pragma once

#include <span>

#include "jetvar/jet.hpp"
#include "jetvar/numeric.hpp"
#include "jetvar/tape.hpp"

// Data-parallel inner loops. Every kernel has a serial reference with the
// same contract; tests hold the OpenMP versions to bitwise agreement with
// it, and bench/ compares their throughput.
namespace jetvar::kernels {

/// Evaluates every tape output at every point: result(i, k) is output k at
/// point i. Throws DomainError naming the lowest-indexed failing point.
Matrix evaluate(const Tape& tape, const PointSet& points);
Matrix evaluate_serial(const Tape& tape, const PointSet& points);

/// max over all entries of relative_deviation(a, b); sizes must match.
double max_relative_deviation(std::span<const double> a, std::span<const double> b);
double max_relative_deviation_serial(std::span<const double> a, std::span<const double> b);

/// max |a_i| over all entries.
double max_abs(std::span<const double> a);
double max_abs_serial(std::span<const double> a);

}  // namespace jetvar::kernels
