#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jetvar/expr.hpp"
#include "jetvar/jet.hpp"

namespace jetvar {

/// Straight-line program compiled from one or more expressions.
///
/// Shared subexpressions (the DAG is hash-consed) become a single
/// instruction, so a list of components that reuse the same derivatives is
/// evaluated once per point. A Tape is immutable after construction and can
/// be evaluated from many threads, each with its own scratch buffer.
class Tape {
 public:
  struct Instr {
    Op op;
    std::int32_t a;  // operand slot, or coordinate flat index for Op::Coord
    std::int32_t b;
    double value;
  };

  /// Outcome of evaluating at one point: `ok` false means a partial function
  /// left its domain at instruction `failed_at`.
  struct Status {
    bool ok = true;
    std::int32_t failed_at = -1;
  };

  Tape(const JetSpace& space, std::span<const Expr> outputs);
  Tape(const JetSpace& space, const Expr& output) : Tape(space, std::span<const Expr>(&output, 1)) {}

  const JetSpace& space() const noexcept { return space_; }
  std::size_t num_outputs() const noexcept { return outputs_.size(); }
  std::size_t num_instructions() const noexcept { return code_.size(); }
  std::size_t scratch_size() const noexcept { return code_.size(); }
  const Instr& instruction(std::size_t i) const noexcept { return code_[i]; }

  /// Evaluates all outputs at `point` into `out`, using `scratch`
  /// (scratch_size() doubles). Never throws.
  Status run(std::span<const double> point, std::span<double> out, std::span<double> scratch) const noexcept;

  /// Convenience single-point evaluation; throws DomainError.
  std::vector<double> eval(std::span<const double> point) const;

 private:
  JetSpace space_;
  std::vector<Instr> code_;
  std::vector<std::int32_t> outputs_;
};

/// Value of `e` at `p`; throws DomainError outside the domain of a partial
/// function (division by zero, log/sqrt of negatives, non-finite results).
double eval(const Expr& e, const JetPoint& p);

}  // namespace jetvar
