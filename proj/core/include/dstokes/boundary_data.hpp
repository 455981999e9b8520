#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dstokes/fe_spaces.hpp"
#include "dstokes/geometry.hpp"
#include "dstokes/mesh.hpp"
#include "dstokes/trace.hpp"

namespace dstokes {

/// Location of a discontinuity of a boundary datum, as an arclength along a
/// polygon edge measured from the edge's start vertex.
struct JumpPoint {
  int polygon_edge = 0;
  double arclength = 0.0;
};

/// Vector-valued Dirichlet datum u on the polygon boundary, evaluated edge by
/// edge so that piecewise-smooth data may differ between facets.
struct BoundaryDatum {
  std::function<Vec2(int polygon_edge, double arclength)> evaluator;
  std::vector<JumpPoint> jumps;
  /// Sobolev smoothness t of the datum (informational).
  double smoothness = 1.0;
  /// Datum behaves like r^a near polygon vertex 0; quadrature is graded there.
  bool singular_at_corner = false;

  Vec2 operator()(int polygon_edge, double arclength) const { return evaluator(polygon_edge, arclength); }

  /// Wraps a field defined on the plane: u(e, s) = f(start_e + s * tangent_e).
  static BoundaryDatum from_field(const Polygon& polygon, std::function<Vec2(const Point2&)> field,
                                  double smoothness = 1.0, bool singular_at_corner = false);
};

/// L2(boundary) projection into the trace space. The load vector is integrated
/// with 6-point Gauss rules per piece, pieces split at jumps and geometrically
/// graded (4 levels) toward a singular corner.
/// Throws NumericalError when the boundary mass system cannot be solved.
BoundaryTrace project_l2(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs);

/// Carstensen quasi-interpolation: c_j = <u, phi_j> / <1, phi_j>.
BoundaryTrace interpolate_carstensen(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs);

/// Pointwise evaluation at the boundary nodes. Throws ValidationError if a
/// node coincides with a declared jump of u.
BoundaryTrace interpolate_lagrange(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs);

enum class CorrectorKind { affine_field, projected_normal };

/// w_h with nonzero boundary flux, used to remove the net flux of a trace.
struct CompatibilityCorrector {
  BoundaryTrace w;
  double flux = 0.0;  // <w_h, n>
};

/// affine_field: trace of 1/2 (x - center), center defaulting to the polygon
/// centroid; its flux equals |Omega|. projected_normal: L2 projection of the
/// piecewise constant outward normal; its flux equals ||w_h||^2.
CompatibilityCorrector build_corrector(CorrectorKind kind, const Mesh& mesh, const DofMap& dofs,
                                       std::optional<Point2> center = std::nullopt);

/// u_h - lambda w_h with lambda = <u_h, n> / <w_h, n>, so the result has zero
/// net flux. Throws ValidationError if |<w_h, n>| < 1e-14.
BoundaryTrace enforce_compatibility(const BoundaryTrace& trace, const CompatibilityCorrector& corrector,
                                    const Mesh& mesh, const DofMap& dofs);

/// Point value of a trace on boundary edge e at local parameter t in [0, 1].
Vec2 evaluate_trace(const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs, std::size_t edge, double t);

/// ||u - u_h||_{L2(boundary)} with the same quadrature as project_l2.
double boundary_l2_error(const BoundaryDatum& u, const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs);

/// Boundary inner product (u_h, v_h) summed over both components.
double boundary_inner(const BoundaryTrace& a, const BoundaryTrace& b, const Mesh& mesh, const DofMap& dofs);

/// Boundary load vector <u_c, phi_i> per component.
BoundaryTrace boundary_moments(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs);

/// Net flux <u, n> of the datum, integrated with the graded boundary quadrature of `mesh`.
double datum_flux(const BoundaryDatum& u, const Mesh& mesh);

}  // namespace dstokes
