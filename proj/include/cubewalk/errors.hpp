#pragma once

#include <stdexcept>
#include <string>

namespace cubewalk {

// A requested distance/chord capability is not available for this body.
struct UnsupportedCapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The query point is too close to the boundary for the precision budget.
struct MarginError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The query point lies exactly on a dyadic cube boundary; callers re-draw.
struct BoundaryPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A walk kernel exhausted its retry budget.
struct StepFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stationary-vector construction received an inconsistent body volume.
struct InconsistentVolumeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cubewalk
