#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphmem {

/// Violated precondition on an argument (bad size, probability outside [0,1], ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Edge-list file that does not follow the text format.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Expected-degree sequence whose largest weight squared reaches the weight sum,
/// so some pair probability would exceed one.
class InfeasibleWeights : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative eigensolver ran out of matrix-vector products.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace graphmem
