#pragma once

#include <stdexcept>
#include <string>

namespace rcplan {

/// Violated structural precondition: mismatched variable spaces, missing
/// variables, discontinuous trajectories, dimension mismatches.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// User-supplied data that cannot be used as given (bad scenario file,
/// start/goal outside a contour, distribution parameters out of range).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested operation is not available for the given data, e.g. Monte
/// Carlo sampling from a distribution known only by its moments.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcplan
