#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace jetvar {

/// Coordinate y^{(order)index} on a jet space; order 0 is the base x^index.
/// Indices are 1-based to match the textual grammar (`x1`, `y2_1`).
struct CoordId {
  int order = 0;
  int index = 1;

  friend auto operator<=>(const CoordId&, const CoordId&) = default;
};

enum class Op : std::uint8_t {
  Constant,
  Coord,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Sin,
  Cos,
  Exp,
  Log,
  Sqrt,
};

int arity(Op op) noexcept;
const char* op_name(Op op) noexcept;

/// Immutable expression over jet coordinates.
///
/// Nodes are hash-consed: two structurally identical expressions share the
/// same node, so `a == b` is structural equality and derivative/evaluation
/// caches keyed on node identity see every repeated subterm once. Building
/// expressions is thread-safe.
class Expr {
 public:
  struct Node;

  Expr();  // the constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor): literals mix freely

  static Expr constant(double value);
  static Expr coord(CoordId id);
  static Expr coord(int order, int index) { return coord(CoordId{order, index}); }

  /// Raw constructors: no folding, no identities. The parser uses these so
  /// its output mirrors the input text.
  static Expr unary(Op op, const Expr& arg);
  static Expr binary(Op op, const Expr& lhs, const Expr& rhs);

  Op op() const noexcept;
  double value() const noexcept;     // Constant only
  CoordId coord_id() const noexcept;  // Coord only
  const Expr& arg(int i) const noexcept;

  /// Largest coordinate order present, or -1 for coordinate-free expressions.
  int max_order() const noexcept;
  /// Number of distinct nodes in the DAG.
  std::size_t dag_size() const;
  /// False only when `id` provably does not occur in the expression.
  bool may_depend_on(CoordId id) const noexcept;

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_zero() const noexcept { return is_constant() && value() == 0.0; }
  bool is_one() const noexcept { return is_constant() && value() == 1.0; }

  const Node* node() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b) noexcept { return a.node_ == b.node_; }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr intern(Op op, double value, CoordId id, const Expr* a, const Expr* b);

  std::shared_ptr<const Node> node_;
};

// Folding constructors. They apply constant folding and the identities
// e+0, e*1, e*0, e^0, e^1, 0/e on the spot, which keeps derived expressions
// small; `simplify` runs the same rules over an existing tree.
Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Expr& exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);

Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

/// Sum of a range of expressions (0 when empty).
Expr sum(const std::vector<Expr>& terms);

/// Symbolic partial derivative with respect to `c`.
Expr diff(const Expr& e, CoordId c);

/// Bottom-up constant folding and neutral-element removal.
Expr simplify(const Expr& e);

/// Text in the input grammar; `parse(render(e))` evaluates identically to e.
std::string render(const Expr& e);

/// Coordinate name in the input grammar: `x3`, `y2_1`.
std::string coord_name(CoordId id);

}  // namespace jetvar
