#pragma once

#include <stdexcept>
#include <string>

namespace surfex {

// Violated precondition on user-supplied data (bad grid, mask collar, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File system or file-format failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear solve failed (singular matrix, no convergence, bad structure).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace surfex
