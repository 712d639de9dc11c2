#pragma once

#include <stdexcept>
#include <string>

namespace rootcone {

/// Malformed structure: mismatched ranks, bad indices, absent representations.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Value outside an operation's domain (zero vector, non-full-dimensional
/// cone where an interior is required, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration exceeded its configured element budget.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed instance file (schema-level).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A referenced name does not exist, or an instance fails semantic checks.
struct InvalidInstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rootcone
