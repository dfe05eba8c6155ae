#include "jetvar/expr.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace jetvar {

struct Expr::Node {
  Op op;
  double value;
  CoordId id;
  Expr a;
  Expr b;
  int max_order;
  std::uint64_t coord_mask;  // bit 63: overflow (orders/indices beyond 7)
  std::size_t hash;
};

namespace {

constexpr std::uint64_t kOverflowBit = std::uint64_t{1} << 63;

std::uint64_t mask_for(CoordId id) {
  if (id.order < 0 || id.order > 7 || id.index < 1 || id.index > 7) return kOverflowBit;
  return std::uint64_t{1} << (id.order * 7 + (id.index - 1));
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct Key {
  Op op;
  std::uint64_t value_bits;
  CoordId id;
  const Expr::Node* a;
  const Expr::Node* b;

  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.op);
    h = mix(h, std::hash<std::uint64_t>{}(k.value_bits));
    h = mix(h, static_cast<std::size_t>(k.id.order) * 1315423911u + static_cast<std::size_t>(k.id.index));
    h = mix(h, std::hash<const void*>{}(k.a));
    h = mix(h, std::hash<const void*>{}(k.b));
    return h;
  }
};

class InternTable {
 public:
  std::shared_ptr<const Expr::Node> find(const Key& key) {
    auto it = table_.find(key);
    if (it == table_.end()) return nullptr;
    return it->second.lock();
  }

  void insert(const Key& key, const std::shared_ptr<const Expr::Node>& node) {
    table_[key] = node;
    if (table_.size() > sweep_at_) {
      std::erase_if(table_, [](const auto& kv) { return kv.second.expired(); });
      sweep_at_ = std::max<std::size_t>(4096, 2 * table_.size());
    }
  }

  std::mutex mutex;

 private:
  std::unordered_map<Key, std::weak_ptr<const Expr::Node>, KeyHash> table_;
  std::size_t sweep_at_ = 4096;
};

InternTable& table() {
  static InternTable* t = new InternTable();  // outlives static Expr values
  return *t;
}

}  // namespace

int arity(Op op) noexcept {
  switch (op) {
    case Op::Constant:
    case Op::Coord:
      return 0;
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Log:
    case Op::Sqrt:
      return 1;
    default:
      return 2;
  }
}

const char* op_name(Op op) noexcept {
  switch (op) {
    case Op::Constant: return "const";
    case Op::Coord: return "coord";
    case Op::Neg: return "neg";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Pow: return "^";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
  }
  return "?";
}

Expr Expr::intern(Op op, double value, CoordId id, const Expr* a, const Expr* b) {
  if (value == 0.0) value = 0.0;  // fold -0 into +0
  Key key{op, std::bit_cast<std::uint64_t>(value), id, a ? a->node() : nullptr, b ? b->node() : nullptr};
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto found = t.find(key)) return Expr(std::move(found));

  // Children may be null only while the constant 0 itself is being created.
  Node node{op, value, id, Expr(nullptr), Expr(nullptr), -1, 0, 0};
  if (a) node.a = *a;
  if (b) node.b = *b;
  switch (op) {
    case Op::Constant:
      break;
    case Op::Coord:
      node.max_order = id.order;
      node.coord_mask = mask_for(id);
      break;
    default:
      node.max_order = a->max_order();
      node.coord_mask = a->node()->coord_mask;
      if (b) {
        node.max_order = std::max(node.max_order, b->max_order());
        node.coord_mask |= b->node()->coord_mask;
      }
  }
  node.hash = KeyHash{}(key);
  auto ptr = std::make_shared<const Node>(std::move(node));
  t.insert(key, ptr);
  return Expr(std::move(ptr));
}

Expr::Expr() : Expr(constant(0.0)) {}
Expr::Expr(double value) : Expr(constant(value)) {}

Expr Expr::constant(double value) {
  static const Expr zero = intern(Op::Constant, 0.0, {}, nullptr, nullptr);
  if (value == 0.0 && zero.node_) return zero;
  return intern(Op::Constant, value, {}, nullptr, nullptr);
}

Expr Expr::coord(CoordId id) { return intern(Op::Coord, 0.0, id, nullptr, nullptr); }

Expr Expr::unary(Op op, const Expr& arg) { return intern(op, 0.0, {}, &arg, nullptr); }

Expr Expr::binary(Op op, const Expr& lhs, const Expr& rhs) { return intern(op, 0.0, {}, &lhs, &rhs); }

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
CoordId Expr::coord_id() const noexcept { return node_->id; }
const Expr& Expr::arg(int i) const noexcept { return i == 0 ? node_->a : node_->b; }
int Expr::max_order() const noexcept { return node_->max_order; }

bool Expr::may_depend_on(CoordId id) const noexcept {
  if (node_->coord_mask & kOverflowBit) return true;
  return (node_->coord_mask & mask_for(id)) != 0;
}

std::size_t Expr::dag_size() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (int i = 0; i < arity(n->op); ++i) stack.push_back((i == 0 ? n->a : n->b).node());
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Folding constructors
// ---------------------------------------------------------------------------

namespace {

// Folds only when the result is an ordinary finite number, so expressions
// such as 1/0 survive until evaluation reports them.
bool fold(double v, Expr& out) {
  if (!std::isfinite(v)) return false;
  out = Expr::constant(v);
  return true;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.op() == Op::Neg) return a.arg(0);
  Expr out;
  if (a.op() == Op::Mul && a.arg(0).is_constant() && fold(-a.arg(0).value(), out)) return out * a.arg(1);
  return Expr::unary(Op::Neg, a);
}

Expr operator+(const Expr& a, const Expr& b) {
  Expr out;
  if (a.is_constant() && b.is_constant() && fold(a.value() + b.value(), out)) return out;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (b.op() == Op::Neg) return a - b.arg(0);
  if (a == b) return Expr::constant(2.0) * a;
  return Expr::binary(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  Expr out;
  if (a.is_constant() && b.is_constant() && fold(a.value() - b.value(), out)) return out;
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a == b) return Expr();
  if (b.op() == Op::Neg) return a + b.arg(0);
  return Expr::binary(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  if (a.is_constant() && b.is_constant() && fold(a.value() * b.value(), out)) return out;
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && a.value() == -1.0) return -b;
  if (b.is_constant() && b.value() == -1.0) return -a;
  if (a.op() == Op::Neg && b.op() == Op::Neg) return a.arg(0) * b.arg(0);
  if (a.op() == Op::Neg) return -(a.arg(0) * b);
  if (b.op() == Op::Neg) return -(a * b.arg(0));
  // keep constants on the left so c1*(c2*e) folds
  if (b.is_constant() && !a.is_constant()) return b * a;
  if (a.is_constant() && b.op() == Op::Mul && b.arg(0).is_constant()) {
    if (fold(a.value() * b.arg(0).value(), out)) return out * b.arg(1);
  }
  // float constants outward: (c*x)*b -> c*(x*b), a*(c*x) -> c*(a*x)
  if (!a.is_constant() && a.op() == Op::Mul && a.arg(0).is_constant()) return a.arg(0) * (a.arg(1) * b);
  if (!a.is_constant() && b.op() == Op::Mul && b.arg(0).is_constant()) return b.arg(0) * (a * b.arg(1));
  return Expr::binary(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  Expr out;
  if (a.is_constant() && b.is_constant() && b.value() != 0.0 && fold(a.value() / b.value(), out)) return out;
  if (a.is_zero() && !b.is_zero()) return Expr();
  if (b.is_one()) return a;
  if (b.is_constant() && b.value() != 0.0 && fold(1.0 / b.value(), out)) return out * a;
  if (a.op() == Op::Neg) return -(a.arg(0) / b);
  if (b.op() == Op::Neg) return -(a / b.arg(0));
  if (a.op() == Op::Mul && a.arg(0).is_constant()) return a.arg(0) * (a.arg(1) / b);
  if (b.op() == Op::Mul && b.arg(0).is_constant() && b.arg(0).value() != 0.0 && fold(1.0 / b.arg(0).value(), out))
    return out * (a / b.arg(1));
  return Expr::binary(Op::Div, a, b);
}

Expr pow(const Expr& base, const Expr& exponent) {
  Expr out;
  if (exponent.is_zero()) return Expr::constant(1.0);
  if (exponent.is_one()) return base;
  if (base.is_constant() && exponent.is_constant()) {
    const double b = base.value();
    const double e = exponent.value();
    if ((b > 0.0 || (b != 0.0 && is_integer(e)) || (b == 0.0 && e > 0.0)) && fold(std::pow(b, e), out)) return out;
  }
  return Expr::binary(Op::Pow, base, exponent);
}

namespace {

Expr unary_fold(Op op, const Expr& a, double (*fn)(double), bool (*in_domain)(double)) {
  Expr out;
  if (a.is_constant() && in_domain(a.value()) && fold(fn(a.value()), out)) return out;
  return Expr::unary(op, a);
}

bool any(double) { return true; }
bool positive(double v) { return v > 0.0; }
bool nonnegative(double v) { return v >= 0.0; }

}  // namespace

Expr sin(const Expr& a) { return unary_fold(Op::Sin, a, [](double v) { return std::sin(v); }, any); }
Expr cos(const Expr& a) { return unary_fold(Op::Cos, a, [](double v) { return std::cos(v); }, any); }
Expr exp(const Expr& a) { return unary_fold(Op::Exp, a, [](double v) { return std::exp(v); }, any); }
Expr log(const Expr& a) { return unary_fold(Op::Log, a, [](double v) { return std::log(v); }, positive); }
Expr sqrt(const Expr& a) { return unary_fold(Op::Sqrt, a, [](double v) { return std::sqrt(v); }, nonnegative); }

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr sum(const std::vector<Expr>& terms) {
  Expr total;
  for (const auto& t : terms) total += t;
  return total;
}

// ---------------------------------------------------------------------------
// Rebuild with folding
// ---------------------------------------------------------------------------

namespace {

Expr rebuild(Op op, const Expr& a, const Expr& b) {
  switch (op) {
    case Op::Neg: return -a;
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    case Op::Pow: return pow(a, b);
    case Op::Sin: return sin(a);
    case Op::Cos: return cos(a);
    case Op::Exp: return exp(a);
    case Op::Log: return log(a);
    case Op::Sqrt: return sqrt(a);
    default: return a;
  }
}

}  // namespace

Expr simplify(const Expr& e) {
  std::unordered_map<const Expr::Node*, Expr> memo;
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    if (arity(x.op()) == 0) return x;
    if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
    Expr a = go(x.arg(0));
    Expr b = arity(x.op()) == 2 ? go(x.arg(1)) : Expr();
    Expr out = rebuild(x.op(), a, b);
    memo.emplace(x.node(), out);
    return out;
  };
  return go(e);
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr diff(const Expr& e, CoordId c) {
  std::unordered_map<const Expr::Node*, Expr> memo;
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    if (!x.may_depend_on(c)) return Expr();
    if (x.op() == Op::Coord) return Expr(x.coord_id() == c ? 1.0 : 0.0);
    if (auto it = memo.find(x.node()); it != memo.end()) return it->second;
    const Expr& a = x.arg(0);
    Expr out;
    switch (x.op()) {
      case Op::Neg: out = -go(a); break;
      case Op::Add: out = go(a) + go(x.arg(1)); break;
      case Op::Sub: out = go(a) - go(x.arg(1)); break;
      case Op::Mul: {
        const Expr& b = x.arg(1);
        out = go(a) * b + a * go(b);
        break;
      }
      case Op::Div: {
        const Expr& b = x.arg(1);
        Expr da = go(a);
        Expr db = go(b);
        out = da / b - (a * db) / (b * b);
        break;
      }
      case Op::Pow: {
        const Expr& b = x.arg(1);
        Expr da = go(a);
        if (!b.may_depend_on(c)) {
          // constant-in-c exponent: b a^(b-1) a'
          out = b * pow(a, b - Expr(1.0)) * da;
        } else {
          out = x * (go(b) * log(a) + b * da / a);
        }
        break;
      }
      case Op::Sin: out = cos(a) * go(a); break;
      case Op::Cos: out = -(sin(a) * go(a)); break;
      case Op::Exp: out = x * go(a); break;
      case Op::Log: out = go(a) / a; break;
      case Op::Sqrt: out = go(a) / (Expr(2.0) * x); break;
      default: break;
    }
    memo.emplace(x.node(), out);
    return out;
  };
  return go(e);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string coord_name(CoordId id) {
  if (id.order == 0) return "x" + std::to_string(id.index);
  return "y" + std::to_string(id.order) + "_" + std::to_string(id.index);
}

namespace {

enum Prec { kAdd = 1, kMul = 2, kNeg = 3, kPow = 4, kAtom = 5 };

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Constant: return e.value() < 0.0 ? kNeg : kAtom;
    case Op::Add:
    case Op::Sub: return kAdd;
    case Op::Mul:
    case Op::Div: return kMul;
    case Op::Neg: return kNeg;
    case Op::Pow: return kPow;
    default: return kAtom;
  }
}

std::string number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void render_into(const Expr& e, std::string& out);

void child(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(e, out);
  if (parens) out += ')';
}

void render_into(const Expr& e, std::string& out) {
  const int p = precedence(e);
  switch (e.op()) {
    case Op::Constant: out += number(e.value()); return;
    case Op::Coord: out += coord_name(e.coord_id()); return;
    case Op::Neg:
      out += '-';
      child(e.arg(0), precedence(e.arg(0)) <= kNeg, out);
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      child(e.arg(0), precedence(e.arg(0)) < p, out);
      out += ' ';
      out += op_name(e.op());
      out += ' ';
      const bool right_assoc_safe = e.op() == Op::Add || e.op() == Op::Mul;
      const int rp = precedence(e.arg(1));
      child(e.arg(1), right_assoc_safe ? rp < p : rp <= p, out);
      return;
    }
    case Op::Pow:
      child(e.arg(0), precedence(e.arg(0)) <= kPow, out);
      out += '^';
      child(e.arg(1), precedence(e.arg(1)) < kPow, out);
      return;
    default:
      out += op_name(e.op());
      out += '(';
      render_into(e.arg(0), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

}  // namespace jetvar
