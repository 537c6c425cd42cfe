#pragma once

#include <stdexcept>
#include <string>

namespace hermitesof {

/// Malformed or inconsistent user input (dimensions, missing options).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but numerically degenerate (zero leading or constant
/// coefficient, both Bezoutian arguments zero, ...).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Interpolation nodes that cannot produce the requested real symmetric form.
class UnsupportedNodeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The selected real/imaginary part does not have as many roots as the degree.
class NodeCountError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Instance file could not be parsed. `what()` carries the field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance file parsed but failed dimension checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trial point lies outside the domain of the spectral penalty.
class BarrierDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hermitesof
