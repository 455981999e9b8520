#pragma once

#include <vector>

namespace dstokes {

/// Discrete boundary datum u_h in the trace space Y_h^d, one coefficient per
/// boundary velocity dof (DofMap::boundary_velocity_dofs order) and component.
struct BoundaryTrace {
  std::vector<double> x;
  std::vector<double> y;

  BoundaryTrace() = default;
  explicit BoundaryTrace(std::size_t n) : x(n, 0.0), y(n, 0.0) {}

  std::size_t size() const { return x.size(); }

  BoundaryTrace& operator*=(double s) {
    for (auto& v : x) v *= s;
    for (auto& v : y) v *= s;
    return *this;
  }
};

}  // namespace dstokes
