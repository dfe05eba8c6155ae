#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/numeric.hpp"

namespace jetvar {

/// Small dense matrix of expressions (Hessians, metrics, extracted systems).
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Expr> entries() const noexcept { return e_; }

  const Expr& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
  Expr& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

  bool is_constant() const noexcept;
  /// Numeric copy; only meaningful when is_constant().
  Matrix constant_values() const;
  /// Numeric copy from a row of already evaluated entries.
  Matrix from_values(std::span<const double> values) const;

  static ExprMatrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Expr> e_;
};

ExprMatrix operator*(const Expr& s, const ExprMatrix& m);
ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);

/// Determinant by cofactor expansion along the first row.
Expr determinant(const ExprMatrix& m);
/// Transposed cofactor matrix, so m * adjugate(m) = det(m) I.
ExprMatrix adjugate(const ExprMatrix& m);

/// m^{-1} b. A constant m is inverted numerically (throws std::domain_error
/// when singular); otherwise the adjugate formula is used.
std::vector<Expr> solve(const ExprMatrix& m, std::span<const Expr> b);

}  // namespace jetvar
