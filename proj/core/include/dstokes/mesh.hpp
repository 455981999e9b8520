#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "dstokes/geometry.hpp"

namespace dstokes {

enum class DomainId { convex, nonconvex };

/// Simple polygon, counter-clockwise, with vertex 0 at the origin.
///
/// The edge from vertex 0 to vertex 1 runs along the positive x-axis, so the
/// interior angle at the origin is measured counter-clockwise from theta = 0.
struct Polygon {
  std::vector<Point2> vertices;
  double corner_angle = 0.0;

  std::size_t num_edges() const { return vertices.size(); }
  Point2 edge_start(std::size_t e) const { return vertices[e]; }
  Point2 edge_end(std::size_t e) const { return vertices[(e + 1) % vertices.size()]; }
  double edge_length(std::size_t e) const { return distance(edge_start(e), edge_end(e)); }
  /// Outward unit normal of polygon edge e.
  Point2 edge_normal(std::size_t e) const;
  double area() const;
  double perimeter() const;
  Point2 centroid() const;
  /// Interior angle at vertex i in radians.
  double interior_angle(std::size_t i) const;
};

struct BoundaryEdge {
  std::array<int, 2> vertices{};  // traversal order, domain on the left
  Point2 normal;                  // outward unit normal
  int polygon_edge = -1;
};

/// Conforming triangulation of a Polygon. Immutable once built.
class Mesh {
 public:
  /// Builds the mesh and derives its boundary edges. Triangles must be
  /// counter-clockwise; boundary edges are chained starting from the mesh
  /// vertex located at polygon vertex 0.
  Mesh(Polygon polygon, std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

  const Polygon& polygon() const { return polygon_; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  std::array<Point2, 3> triangle_points(std::size_t t) const;
  double triangle_area(std::size_t t) const;
  double triangle_diameter(std::size_t t) const;
  double area() const;
  /// Maximum triangle diameter.
  double h() const { return h_; }
  /// Mesh vertex index coinciding with the polygon's origin corner.
  int corner_vertex() const { return corner_vertex_; }

 private:
  // Private constructor used by refinement: boundary edges are inherited.
  Mesh(Polygon polygon, std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles,
       std::vector<BoundaryEdge> boundary);
  void finalize();

  Polygon polygon_;
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
  double h_ = 0.0;
  int corner_vertex_ = -1;

  friend Mesh refine_uniform(const Mesh& mesh);
};

Polygon make_polygon(DomainId id);

/// Coarse triangulation of the test domain.
///
/// convex: triangle (0,0), (1,0), (cos 2pi/3, sin 2pi/3), split once into 4
/// congruent triangles. nonconvex: L-shape (0,0),(1,0),(1,1),(-1,1),(-1,-1),(0,-1)
/// as three unit squares, each cut by its diagonal through the origin
/// (6 triangles fanned around the origin).
Mesh build_domain(DomainId id);

/// Unit square with vertices a1=(0,0), a2=(1,0), a3=(1,1), a4=(0,1) and two
/// triangles. Boundary traversal visits a1, a2, a3, a4 in that order.
Mesh build_unit_square();

/// Red refinement: every triangle split into four congruent children.
Mesh refine_uniform(const Mesh& mesh);

double boundary_arclength(const Mesh& mesh);

/// Plain text dump: header `nv nt nbe`, then vertices, triangles, and boundary
/// edge records `v0 v1 nx ny polygon_edge`.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace dstokes
