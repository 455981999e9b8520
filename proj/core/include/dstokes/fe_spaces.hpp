#pragma once

#include <array>
#include <vector>

#include "dstokes/geometry.hpp"
#include "dstokes/mesh.hpp"

namespace dstokes {

enum class PairingKind { taylor_hood, mini };

/// Inf-sup stable velocity/pressure pairing.
///
/// Taylor-Hood P2/P1 has velocity order k = 2 and a piecewise quadratic
/// boundary trace space; MINI (P1 + cubic bubble / P1) has k = 1 and a
/// piecewise linear trace space.
struct ElementPairing {
  PairingKind kind = PairingKind::taylor_hood;

  static constexpr ElementPairing taylor_hood() { return {PairingKind::taylor_hood}; }
  static constexpr ElementPairing mini() { return {PairingKind::mini}; }

  constexpr int velocity_order() const { return kind == PairingKind::taylor_hood ? 2 : 1; }
  constexpr int local_velocity_dofs() const { return kind == PairingKind::taylor_hood ? 6 : 4; }
  /// Trace basis functions per boundary edge: endpoints, plus the midpoint for P2.
  constexpr int local_trace_dofs() const { return kind == PairingKind::taylor_hood ? 3 : 2; }
  /// Polynomial degree of the boundary trace space.
  constexpr int trace_degree() const { return kind == PairingKind::taylor_hood ? 2 : 1; }
  /// Rule degree integrating every bilinear-form integrand exactly on affine elements.
  constexpr int assembly_quadrature_degree() const { return 4; }
  friend constexpr bool operator==(ElementPairing, ElementPairing) = default;
};

enum class FieldKind { velocity, pressure };

/// Basis values and gradients with respect to the reference coordinates
/// (xi, eta), where lambda = (1 - xi - eta, xi, eta).
struct ShapeEval {
  std::vector<double> values;
  std::vector<std::array<double, 2>> gradients;
};

/// Local ordering: vertices 0,1,2, then (Taylor-Hood) edge midpoints 01, 12, 20
/// or (MINI) the bubble 27 l0 l1 l2. Pressure is always P1.
/// Throws ValidationError for points outside the reference triangle.
ShapeEval shape_values(ElementPairing pairing, FieldKind which, const Barycentric& point);

/// 1D trace basis on a boundary edge parameterized by t in [0, 1] from its
/// start vertex: P1 {1-t, t}, P2 {(1-t)(1-2t), t(2t-1), 4t(1-t)}.
std::array<double, 3> trace_basis(int degree, double t);

/// Degree-of-freedom layout for one scalar velocity component and the pressure.
///
/// Velocity vectors are stored component-major: [u_x dofs..., u_y dofs...].
/// Vertex dofs carry the vertex index; Taylor-Hood edge dofs follow the
/// vertices, MINI bubble dofs follow the vertices.
struct DofMap {
  ElementPairing pairing;
  int n_velocity_per_component = 0;
  int n_pressure = 0;

  std::vector<std::array<int, 6>> cell_velocity_dofs;  // first local_velocity_dofs() entries used
  std::vector<std::array<int, 3>> cell_pressure_dofs;
  std::vector<std::array<int, 2>> edges;               // Taylor-Hood only: edge -> vertices
  std::vector<Point2> nodes;                           // nodal point of each scalar velocity dof

  /// Scalar velocity dofs on the boundary, ordered along the boundary traversal.
  std::vector<int> boundary_velocity_dofs;
  /// Inverse of boundary_velocity_dofs; -1 for interior dofs.
  std::vector<int> boundary_index;
  /// Per boundary edge (mesh order): trace dof indices into boundary_velocity_dofs,
  /// ordered start vertex, end vertex, midpoint.
  std::vector<std::array<int, 3>> boundary_edge_dofs;

  int n_velocity() const { return 2 * n_velocity_per_component; }
  int n_boundary() const { return static_cast<int>(boundary_velocity_dofs.size()); }
  bool is_boundary(int scalar_dof) const { return boundary_index[scalar_dof] >= 0; }
};

DofMap build_dofmap(const Mesh& mesh, ElementPairing pairing);

/// Affine element map data for one triangle.
struct ElementGeometry {
  std::array<Point2, 3> vertices;
  double area = 0.0;
  /// Inverse transpose of the Jacobian: physical gradient = jit * reference gradient.
  std::array<std::array<double, 2>, 2> jit{};

  explicit ElementGeometry(const std::array<Point2, 3>& v);
  std::array<double, 2> physical_gradient(const std::array<double, 2>& ref) const {
    return {jit[0][0] * ref[0] + jit[0][1] * ref[1], jit[1][0] * ref[0] + jit[1][1] * ref[1]};
  }
};

}  // namespace dstokes
