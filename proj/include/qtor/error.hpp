#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtor {

/// Malformed or out-of-contract user input (bad preset, non-dominant top, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematically undefined request (non-invertible term, off-lattice shift, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A lookup outside a truncation window or an operator table range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An algorithm reached a state its contract does not cover.
class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace qtor
