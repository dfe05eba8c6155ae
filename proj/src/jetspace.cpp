#include "jetvar/jetspace.hpp"

#include "jetvar/errors.hpp"

namespace jetvar {
namespace {

void require_same(const JetSpace& a, const JetSpace& b) {
  if (!(a == b)) throw std::invalid_argument("operands live on different jet spaces");
}

void require_range(int value, int lo, int hi, const char* what) {
  if (value < lo || value > hi)
    throw std::out_of_range(std::string(what) + " = " + std::to_string(value) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
}

// grad[a][c] = d e_a / d z^c for a list of expressions.
std::vector<std::vector<Expr>> jacobian(const JetSpace& space, std::span<const Expr> es) {
  const int d = space.dim();
  std::vector<std::vector<Expr>> out(es.size(), std::vector<Expr>(static_cast<std::size_t>(d)));
  for (std::size_t a = 0; a < es.size(); ++a) {
    if (es[a].is_constant()) continue;
    for (int c = 0; c < d; ++c) out[a][static_cast<std::size_t>(c)] = diff(es[a], space.coord(c));
  }
  return out;
}

}  // namespace

Semispray::Semispray(JetSpace space, std::vector<Expr> coefficients) : space_(space), g_(std::move(coefficients)) {
  if (g_.size() != static_cast<std::size_t>(space_.n()))
    throw std::invalid_argument("semispray needs " + std::to_string(space_.n()) + " coefficients, got " +
                                std::to_string(g_.size()));
}

VectorField Semispray::field() const {
  VectorField s(space_);
  const int r = space_.r();
  for (int i = 1; i <= space_.n(); ++i) {
    for (int beta = 0; beta < r; ++beta) s[CoordId{beta, i}] = Expr(beta + 1.0) * Expr::coord(beta + 1, i);
    s[CoordId{r, i}] = Expr(-(r + 1.0)) * coefficient(i);
  }
  return s;
}

VectorField liouville(const JetSpace& space, int alpha) {
  require_range(alpha, 1, space.r(), "Liouville index alpha");
  VectorField c(space);
  for (int s = 1; s <= space.r() + 1 - alpha; ++s)
    for (int i = 1; i <= space.n(); ++i) c[CoordId{alpha + s - 1, i}] = Expr(static_cast<double>(s)) * Expr::coord(s, i);
  return c;
}

Tensor11 tangent_tensor(const JetSpace& space, int alpha) {
  require_range(alpha, 1, space.r() + 1, "tangent structure power alpha");
  Tensor11 j(space);
  for (int b = 0; b < space.dim(); ++b) {
    const CoordId from = space.coord(b);
    const CoordId to{from.order + alpha, from.index};
    if (space.contains(to)) j(space.flat(to), b) = Expr(1.0);
  }
  return j;
}

Tensor11 identity_tensor(const JetSpace& space) {
  Tensor11 id(space);
  for (int a = 0; a < space.dim(); ++a) id(a, a) = Expr(1.0);
  return id;
}

Expr tulczyjew(const JetSpace& space, const Expr& e) {
  const int top = e.max_order();
  if (top >= space.r())
    throw OrderOverflow("d_T of a function of order " + std::to_string(top) + " leaves T^" + std::to_string(space.r()) +
                        "M");
  Expr out;
  for (int beta = 0; beta <= top; ++beta)
    for (int i = 1; i <= space.n(); ++i) {
      const CoordId c{beta, i};
      if (!e.may_depend_on(c)) continue;
      out += Expr(beta + 1.0) * Expr::coord(beta + 1, i) * diff(e, c);
    }
  return out;
}

Expr semispray_apply(const Semispray& s, const Expr& e) {
  const JetSpace& space = s.space();
  const int r = space.r();
  Expr out;
  for (int beta = 0; beta < r; ++beta)
    for (int i = 1; i <= space.n(); ++i) {
      const CoordId c{beta, i};
      if (!e.may_depend_on(c)) continue;
      out += Expr(beta + 1.0) * Expr::coord(beta + 1, i) * diff(e, c);
    }
  for (int i = 1; i <= space.n(); ++i) {
    const CoordId c{r, i};
    if (!e.may_depend_on(c)) continue;
    out -= Expr(r + 1.0) * s.coefficient(i) * diff(e, c);
  }
  return out;
}

Expr apply(const VectorField& x, const Expr& f) {
  const JetSpace& space = x.space();
  Expr out;
  for (int b = 0; b < space.dim(); ++b) {
    if (x[b].is_zero()) continue;
    const CoordId c = space.coord(b);
    if (!f.may_depend_on(c)) continue;
    out += x[b] * diff(f, c);
  }
  return out;
}

Expr interior(const VectorField& x, const OneForm& theta) {
  require_same(x.space(), theta.space());
  Expr out;
  for (int a = 0; a < x.space().dim(); ++a) out += x[a] * theta[a];
  return out;
}

OneForm interior(const VectorField& x, const TwoForm& omega) {
  require_same(x.space(), omega.space());
  const int d = x.space().dim();
  OneForm out(x.space());
  for (int b = 0; b < d; ++b) {
    Expr acc;
    for (int a = 0; a < d; ++a) acc += x[a] * omega(a, b);
    out[b] = acc;
  }
  return out;
}

OneForm exterior_d(const JetSpace& space, const Expr& f) {
  OneForm out(space);
  for (int a = 0; a < space.dim(); ++a) {
    const CoordId c = space.coord(a);
    if (f.may_depend_on(c)) out[a] = diff(f, c);
  }
  return out;
}

TwoForm exterior_d(const OneForm& theta) {
  const JetSpace& space = theta.space();
  const int d = space.dim();
  auto grad = jacobian(space, theta.components());
  TwoForm out(space);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      Expr v = grad[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] -
               grad[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      out(a, b) = v;
      out(b, a) = -v;
    }
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same(x.space(), y.space());
  VectorField out(x.space());
  for (int a = 0; a < x.space().dim(); ++a) out[a] = apply(x, y[a]) - apply(y, x[a]);
  return out;
}

OneForm lie_derivative(const VectorField& x, const OneForm& theta) {
  require_same(x.space(), theta.space());
  const JetSpace& space = x.space();
  const int d = space.dim();
  OneForm out(space);
  for (int a = 0; a < d; ++a) {
    Expr v = apply(x, theta[a]);
    const CoordId ca = space.coord(a);
    for (int b = 0; b < d; ++b) {
      if (theta[b].is_zero() || !x[b].may_depend_on(ca)) continue;
      v += theta[b] * diff(x[b], ca);
    }
    out[a] = v;
  }
  return out;
}

VectorField apply(const Tensor11& k, const VectorField& x) {
  require_same(k.space(), x.space());
  const int d = k.dim();
  VectorField out(x.space());
  for (int a = 0; a < d; ++a) {
    Expr acc;
    for (int b = 0; b < d; ++b) acc += k(a, b) * x[b];
    out[a] = acc;
  }
  return out;
}

Tensor11 compose(const Tensor11& a, const Tensor11& b) {
  require_same(a.space(), b.space());
  const int d = a.dim();
  Tensor11 out(a.space());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Expr acc;
      for (int c = 0; c < d; ++c) acc += a(i, c) * b(c, j);
      out(i, j) = acc;
    }
  return out;
}

OneForm contract(const Tensor11& k, const OneForm& theta) {
  require_same(k.space(), theta.space());
  const int d = k.dim();
  OneForm out(theta.space());
  for (int b = 0; b < d; ++b) {
    Expr acc;
    for (int a = 0; a < d; ++a) acc += theta[a] * k(a, b);
    out[b] = acc;
  }
  return out;
}

SemiBasicForm d_J_alpha(const JetSpace& space, const Expr& f, int alpha) {
  require_range(alpha, 1, space.r(), "d_J power alpha");
  OneForm out(space);
  for (int beta = 0; beta <= space.r() - alpha; ++beta)
    for (int i = 1; i <= space.n(); ++i) {
      const CoordId c{beta + alpha, i};
      if (f.may_depend_on(c)) out[CoordId{beta, i}] = diff(f, c);
    }
  return {std::move(out), space.r() - alpha + 1};
}

OneForm i_J_alpha(const OneForm& theta, int alpha) {
  const JetSpace& space = theta.space();
  require_range(alpha, 1, space.r(), "i_J power alpha");
  // (theta o J^alpha)_{(beta)i} = theta_{(beta+alpha)i}
  OneForm out(space);
  for (int b = 0; b < space.dim(); ++b) {
    const CoordId from = space.coord(b);
    const CoordId to{from.order + alpha, from.index};
    if (space.contains(to)) out[b] = theta[to];
  }
  return out;
}

SemiBasicForm i_J_alpha(const SemiBasicForm& theta, int alpha) {
  return {i_J_alpha(theta.form, alpha), std::max(1, theta.order - alpha)};
}

Tensor11 fn_bracket(const VectorField& x, const Tensor11& k) {
  require_same(x.space(), k.space());
  const JetSpace& space = x.space();
  const int d = space.dim();
  auto dx = jacobian(space, x.components());  // dx[a][c] = dX^a/dz^c
  Tensor11 out(space);
  for (int b = 0; b < d; ++b) {
    for (int a = 0; a < d; ++a) {
      // [X, K d_b]^a = X(K^a_b) - (K d_b)(X^a)
      Expr v = apply(x, k(a, b));
      for (int c = 0; c < d; ++c) {
        if (k(c, b).is_zero()) continue;
        v -= k(c, b) * dx[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
      }
      // -K [X, d_b] = + K^a_c dX^c/dz^b
      for (int c = 0; c < d; ++c) {
        if (k(a, c).is_zero()) continue;
        v += k(a, c) * dx[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
      }
      out(a, b) = v;
    }
  }
  return out;
}

std::vector<Expr> semi_basic_violation(const OneForm& theta, int order) {
  std::vector<Expr> out;
  const JetSpace& space = theta.space();
  for (int a = 0; a < space.dim(); ++a)
    if (space.coord(a).order >= order) out.push_back(theta[a]);
  return out;
}

}  // namespace jetvar
