#pragma once

#include <string_view>

#include "jetvar/expr.hpp"
#include "jetvar/jet.hpp"

namespace jetvar {

/// Parses the expression grammar
///
///   expr   := expr ('+'|'-'|'*'|'/') expr | expr '^' expr | '-' expr
///           | func '(' expr ')' | '(' expr ')' | number | coord
///   coord  := 'x' <i> | 'y' <alpha> '_' <i>
///   func   := sin | cos | exp | log | sqrt
///
/// with the usual precedence, `^` right-associative and binding tighter than
/// unary minus. Every coordinate must exist in `space`.
///
/// Throws SyntaxError, UnknownIdentifier or IndexOutOfRange.
Expr parse(std::string_view text, const JetSpace& space);

}  // namespace jetvar
