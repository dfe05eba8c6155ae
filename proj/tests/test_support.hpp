#pragma once

#include <string>
#include <vector>

#include "jetvar/parser.hpp"
#include "jetvar/worked.hpp"

namespace jetvar::testing {

inline Metric diagonal_metric(const std::vector<std::string>& diag) {
  const int n = static_cast<int>(diag.size());
  const JetSpace base(n, 1);
  ExprMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = parse(diag[i], base);
  return Metric(std::move(m));
}

/// diag(1, 1 + x1^2): curved, defined everywhere.
inline Metric warped() { return diagonal_metric({"1", "1 + x1^2"}); }

}  // namespace jetvar::testing
