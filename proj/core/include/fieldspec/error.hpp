#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fieldspec {

// Argument outside the mathematical domain of a function (e.g. t outside [0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input: wrong lengths, unsorted positions, empty sets, bad bounds.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative numerical routine did not converge.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t iterations)
      : std::runtime_error(what), iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

// A statistical fit could not be performed on the data supplied.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal theorem-level invariant failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Exact interpolation disagreed with a direct count at the guard node.
class InterpolationGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CSV input; line() is 1-based.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fieldspec
