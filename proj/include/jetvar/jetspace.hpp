#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/jet.hpp"

namespace jetvar {

namespace detail {

/// One expression per coordinate of a jet space, in JetSpace::flat order.
template <class Tag>
class Components {
 public:
  explicit Components(JetSpace space) : space_(space), c_(static_cast<std::size_t>(space.dim())) {}
  Components(JetSpace space, std::vector<Expr> components) : space_(space), c_(std::move(components)) {
    if (c_.size() != static_cast<std::size_t>(space_.dim()))
      throw std::invalid_argument("expected " + std::to_string(space_.dim()) + " components, got " +
                                  std::to_string(c_.size()));
  }

  const JetSpace& space() const noexcept { return space_; }
  std::span<const Expr> components() const noexcept { return c_; }

  const Expr& operator[](int flat) const { return c_[static_cast<std::size_t>(flat)]; }
  Expr& operator[](int flat) { return c_[static_cast<std::size_t>(flat)]; }
  const Expr& operator[](CoordId id) const { return c_[static_cast<std::size_t>(space_.flat(id))]; }
  Expr& operator[](CoordId id) { return c_[static_cast<std::size_t>(space_.flat(id))]; }

  friend Components operator+(const Components& a, const Components& b) {
    Components out(a.space_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
    return out;
  }
  friend Components operator-(const Components& a, const Components& b) {
    Components out(a.space_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
    return out;
  }
  friend Components operator*(const Expr& s, const Components& a) {
    Components out(a.space_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = s * a.c_[i];
    return out;
  }

 private:
  JetSpace space_;
  std::vector<Expr> c_;
};

/// Dense dim x dim array of expressions; entry (a, b) is row a, column b.
template <class Tag>
class Square {
 public:
  explicit Square(JetSpace space)
      : space_(space), e_(static_cast<std::size_t>(space.dim()) * static_cast<std::size_t>(space.dim())) {}

  const JetSpace& space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  std::span<const Expr> entries() const noexcept { return e_; }

  const Expr& operator()(int a, int b) const { return e_[index(a, b)]; }
  Expr& operator()(int a, int b) { return e_[index(a, b)]; }

  friend Square operator+(const Square& x, const Square& y) {
    Square out(x.space_);
    for (std::size_t i = 0; i < x.e_.size(); ++i) out.e_[i] = x.e_[i] + y.e_[i];
    return out;
  }
  friend Square operator-(const Square& x, const Square& y) {
    Square out(x.space_);
    for (std::size_t i = 0; i < x.e_.size(); ++i) out.e_[i] = x.e_[i] - y.e_[i];
    return out;
  }
  friend Square operator*(const Expr& s, const Square& x) {
    Square out(x.space_);
    for (std::size_t i = 0; i < x.e_.size(); ++i) out.e_[i] = s * x.e_[i];
    return out;
  }

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(space_.dim()) + static_cast<std::size_t>(b);
  }

  JetSpace space_;
  std::vector<Expr> e_;
};

struct VectorTag {};
struct FormTag {};
struct TwoFormTag {};
struct TensorTag {};

}  // namespace detail

/// X = X^a d/dz^a.
using VectorField = detail::Components<detail::VectorTag>;
/// theta = theta_a dz^a.
using OneForm = detail::Components<detail::FormTag>;
/// omega = sum_{a<b} omega_ab dz^a ^ dz^b stored dense, omega_ba = -omega_ab,
/// so omega(X, Y) = X^a omega_ab Y^b.
using TwoForm = detail::Square<detail::TwoFormTag>;
/// K = K^a_b d/dz^a (x) dz^b; entry (a, b) is K^a_b.
using Tensor11 = detail::Square<detail::TensorTag>;

/// A 1-form that vanishes on V_order: only the dx, dy^{(1)}, ...,
/// dy^{(order-1)} components may be nonzero.
struct SemiBasicForm {
  OneForm form;
  int order;
};

/// Semispray of order r: S = d_T - (r+1) G^i d/dy^{(r)i}.
class Semispray {
 public:
  Semispray(JetSpace space, std::vector<Expr> coefficients);
  /// G = 0.
  explicit Semispray(JetSpace space) : Semispray(space, std::vector<Expr>(static_cast<std::size_t>(space.n()))) {}

  const JetSpace& space() const noexcept { return space_; }
  std::span<const Expr> coefficients() const noexcept { return g_; }
  const Expr& coefficient(int i) const { return g_[static_cast<std::size_t>(i - 1)]; }

  VectorField field() const;

 private:
  JetSpace space_;
  std::vector<Expr> g_;
};

// ---------------------------------------------------------------------------
// Canonical structures
// ---------------------------------------------------------------------------

/// Liouville field C_alpha = sum_s s y^{(s)i} d/dy^{(alpha+s-1)i}, 1 <= alpha <= r.
VectorField liouville(const JetSpace& space, int alpha);

/// Power J^alpha of the tangent structure, 1 <= alpha <= r+1 (J^{r+1} = 0).
/// (J^alpha)^a_b = 1 exactly when a = (order_b + alpha, i_b).
Tensor11 tangent_tensor(const JetSpace& space, int alpha);
Tensor11 identity_tensor(const JetSpace& space);

/// Total derivative d_T e = sum_beta (beta+1) y^{(beta+1)i} de/dy^{(beta)i}.
/// Throws OrderOverflow when e already depends on y^{(r)}.
Expr tulczyjew(const JetSpace& space, const Expr& e);

/// S(e): the d_T part truncated to T^rM minus (r+1) G^i de/dy^{(r)i}.
Expr semispray_apply(const Semispray& s, const Expr& e);

// ---------------------------------------------------------------------------
// Calculus of fields and forms
// ---------------------------------------------------------------------------

/// X(f) = X^a df/dz^a.
Expr apply(const VectorField& x, const Expr& f);

Expr interior(const VectorField& x, const OneForm& theta);
OneForm interior(const VectorField& x, const TwoForm& omega);

OneForm exterior_d(const JetSpace& space, const Expr& f);
TwoForm exterior_d(const OneForm& theta);

VectorField lie_bracket(const VectorField& x, const VectorField& y);
OneForm lie_derivative(const VectorField& x, const OneForm& theta);

/// K applied to X: (KX)^a = K^a_b X^b.
VectorField apply(const Tensor11& k, const VectorField& x);
/// A o B.
Tensor11 compose(const Tensor11& a, const Tensor11& b);
/// i_K theta = theta o K: (i_K theta)_b = theta_a K^a_b.
OneForm contract(const Tensor11& k, const OneForm& theta);

/// d_{J^alpha} f, semi-basic of order r - alpha + 1:
/// components df/dy^{(beta+alpha)i} in slot (beta)i for beta = 0..r-alpha.
SemiBasicForm d_J_alpha(const JetSpace& space, const Expr& f, int alpha);

/// i_{J^alpha} theta = theta o J^alpha.
OneForm i_J_alpha(const OneForm& theta, int alpha);
/// For theta semi-basic of order gamma the result is semi-basic of order
/// gamma - alpha (identically zero when alpha >= gamma; reported as order 1).
SemiBasicForm i_J_alpha(const SemiBasicForm& theta, int alpha);

/// Frolicher-Nijenhuis bracket [X, K] = L_X K, evaluated column by column:
/// [X, K](d_b) = [X, K d_b] - K [X, d_b].
Tensor11 fn_bracket(const VectorField& x, const Tensor11& k);

/// Components of theta at orders >= `order` (those a semi-basic form of that
/// order must have identically zero).
std::vector<Expr> semi_basic_violation(const OneForm& theta, int order);

}  // namespace jetvar
