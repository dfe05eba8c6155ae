#include "jetvar/tape.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "jetvar/errors.hpp"

namespace jetvar {

Tape::Tape(const JetSpace& space, std::span<const Expr> outputs) : space_(space) {
  std::unordered_map<const Expr::Node*, std::int32_t> slot;
  // Iterative post-order: derived expressions can be deep chains of sums.
  struct Frame {
    const Expr* e;
    bool expanded;
  };
  std::vector<Frame> stack;
  for (const Expr& root : outputs) {
    stack.push_back({&root, false});
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      const Expr& e = *f.e;
      if (slot.count(e.node())) continue;
      const int k = arity(e.op());
      if (!f.expanded && k > 0) {
        stack.push_back({&e, true});
        for (int i = k - 1; i >= 0; --i)
          if (!slot.count(e.arg(i).node())) stack.push_back({&e.arg(i), false});
        continue;
      }
      Instr ins{e.op(), -1, -1, 0.0};
      if (e.op() == Op::Constant) {
        ins.value = e.value();
      } else if (e.op() == Op::Coord) {
        if (!space_.contains(e.coord_id()))
          throw std::invalid_argument("coordinate " + coord_name(e.coord_id()) + " is not in T^" +
                                      std::to_string(space_.r()) + "M with n=" + std::to_string(space_.n()));
        ins.a = space_.flat(e.coord_id());
      } else {
        ins.a = slot.at(e.arg(0).node());
        if (k == 2) ins.b = slot.at(e.arg(1).node());
      }
      slot.emplace(e.node(), static_cast<std::int32_t>(code_.size()));
      code_.push_back(ins);
    }
    outputs_.push_back(slot.at(root.node()));
  }
}

Tape::Status Tape::run(std::span<const double> point, std::span<double> out, std::span<double> scratch) const noexcept {
  double* v = scratch.data();
  const std::size_t count = code_.size();
  for (std::size_t i = 0; i < count; ++i) {
    const Instr& ins = code_[i];
    double r = 0.0;
    switch (ins.op) {
      case Op::Constant: r = ins.value; break;
      case Op::Coord: r = point[static_cast<std::size_t>(ins.a)]; break;
      case Op::Neg: r = -v[ins.a]; break;
      case Op::Add: r = v[ins.a] + v[ins.b]; break;
      case Op::Sub: r = v[ins.a] - v[ins.b]; break;
      case Op::Mul: r = v[ins.a] * v[ins.b]; break;
      case Op::Div:
        if (v[ins.b] == 0.0) return {false, static_cast<std::int32_t>(i)};
        r = v[ins.a] / v[ins.b];
        break;
      case Op::Pow: {
        const double base = v[ins.a];
        const double e = v[ins.b];
        if (e == 2.0) {
          r = base * base;
        } else if (std::floor(e) == e) {
          if (base == 0.0 && e < 0.0) return {false, static_cast<std::int32_t>(i)};
          r = std::pow(base, e);
        } else {
          if (base < 0.0 || (base == 0.0 && e <= 0.0)) return {false, static_cast<std::int32_t>(i)};
          r = std::pow(base, e);
        }
        break;
      }
      case Op::Sin: r = std::sin(v[ins.a]); break;
      case Op::Cos: r = std::cos(v[ins.a]); break;
      case Op::Exp: r = std::exp(v[ins.a]); break;
      case Op::Log:
        if (v[ins.a] <= 0.0) return {false, static_cast<std::int32_t>(i)};
        r = std::log(v[ins.a]);
        break;
      case Op::Sqrt:
        if (v[ins.a] < 0.0) return {false, static_cast<std::int32_t>(i)};
        r = std::sqrt(v[ins.a]);
        break;
    }
    if (!std::isfinite(r)) return {false, static_cast<std::int32_t>(i)};
    v[i] = r;
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = v[outputs_[k]];
  return {};
}

std::vector<double> Tape::eval(std::span<const double> point) const {
  std::vector<double> scratch(scratch_size());
  std::vector<double> out(num_outputs());
  Status st = run(point, out, scratch);
  if (!st.ok) {
    std::ostringstream msg;
    msg << "'" << op_name(code_[static_cast<std::size_t>(st.failed_at)].op) << "' evaluated outside its domain at (";
    for (std::size_t i = 0; i < point.size(); ++i) msg << (i ? ", " : "") << point[i];
    msg << ")";
    throw DomainError(msg.str(), std::vector<double>(point.begin(), point.end()));
  }
  return out;
}

double eval(const Expr& e, const JetPoint& p) { return Tape(p.space(), e).eval(p.coords())[0]; }

}  // namespace jetvar
