#pragma once

#include <stdexcept>
#include <string>

namespace crossforest {

/// Input violates a geometric precondition (collinear/coplanar points, a point on a
/// canonical hyperplane, crossing support segments).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algorithmic step could not complete (retry budget exhausted, infeasible LP where
/// feasibility was required, disconnected edge set).
class AlgorithmFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crossforest
