#pragma once

#include <stdexcept>
#include <string>

namespace trispec {

/// Argument outside the admissible set of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative method failed or a numerical check did not hold.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid polygon (orientation, self-intersection, degeneracy).
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inconsistent mesh tagging or singular elements.
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trispec
