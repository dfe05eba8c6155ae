#include "jetvar/exprmatrix.hpp"

#include <stdexcept>

namespace jetvar {
namespace {

void require_square(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
}

ExprMatrix minor_of(const ExprMatrix& m, std::size_t skip_r, std::size_t skip_c) {
  const std::size_t n = m.rows();
  ExprMatrix out(n - 1, n - 1);
  for (std::size_t r = 0, rr = 0; r < n; ++r) {
    if (r == skip_r) continue;
    for (std::size_t c = 0, cc = 0; c < n; ++c) {
      if (c == skip_c) continue;
      out(rr, cc++) = m(r, c);
    }
    ++rr;
  }
  return out;
}

}  // namespace

bool ExprMatrix::is_constant() const noexcept {
  for (const Expr& e : e_)
    if (!e.is_constant()) return false;
  return true;
}

Matrix ExprMatrix::constant_values() const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.data[i] = e_[i].is_constant() ? e_[i].value() : 0.0;
  return out;
}

Matrix ExprMatrix::from_values(std::span<const double> values) const {
  if (values.size() != e_.size()) throw std::invalid_argument("value count does not match matrix size");
  Matrix out(rows_, cols_);
  std::copy(values.begin(), values.end(), out.data.begin());
  return out;
}

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1.0);
  return m;
}

ExprMatrix operator*(const Expr& s, const ExprMatrix& m) {
  ExprMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = s * m(r, c);
  return out;
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  ExprMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

Expr determinant(const ExprMatrix& m) {
  require_square(m);
  const std::size_t n = m.rows();
  if (n == 0) return Expr(1.0);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Expr det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    Expr term = m(0, c) * determinant(minor_of(m, 0, c));
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

ExprMatrix adjugate(const ExprMatrix& m) {
  require_square(m);
  const std::size_t n = m.rows();
  ExprMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = Expr(1.0);
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Expr cof = determinant(minor_of(m, r, c));
      adj(c, r) = ((r + c) % 2 == 0) ? cof : -cof;
    }
  return adj;
}

std::vector<Expr> solve(const ExprMatrix& m, std::span<const Expr> b) {
  require_square(m);
  const std::size_t n = m.rows();
  if (b.size() != n) throw std::invalid_argument("right-hand side length does not match matrix");
  std::vector<Expr> x(n);
  if (m.is_constant()) {
    Matrix inv;
    if (!invert(m.constant_values(), inv)) throw std::domain_error("constant matrix is singular");
    for (std::size_t i = 0; i < n; ++i) {
      Expr acc;
      for (std::size_t j = 0; j < n; ++j)
        if (inv(i, j) != 0.0) acc += Expr(inv(i, j)) * b[j];
      x[i] = acc;
    }
    return x;
  }
  const ExprMatrix adj = adjugate(m);
  const Expr det = determinant(m);
  for (std::size_t i = 0; i < n; ++i) {
    Expr acc;
    for (std::size_t j = 0; j < n; ++j) acc += adj(i, j) * b[j];
    x[i] = acc / det;
  }
  return x;
}

}  // namespace jetvar
