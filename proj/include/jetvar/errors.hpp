#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetvar {

// Input errors raised while reading expression text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownIdentifier : public ParseError {
 public:
  using ParseError::ParseError;
};

class IndexOutOfRange : public ParseError {
 public:
  using ParseError::ParseError;
};

// A partial function (division, log, sqrt, pow) was evaluated outside its
// domain, or produced a non-finite value.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, std::vector<double> point = {})
      : std::domain_error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

// d_T applied to a function that already lives on the top jet level.
class OrderOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularHessian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The linear system extracted from the Euler-Lagrange residual disagrees with
// the closed-form coefficient (-1)^k binom(2k,k) g.
class SystemMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotProportional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed problem description or command-line input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jetvar
