#include "dstokes/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

#include "dstokes/error.hpp"

namespace dstokes {

Point2 Polygon::edge_normal(std::size_t e) const {
  const Point2 t = edge_end(e) - edge_start(e);
  const double len = norm(t);
  return {t.y / len, -t.x / len};
}

double Polygon::area() const {
  double a2 = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    a2 += cross(edge_start(i), edge_end(i));
  }
  return 0.5 * a2;
}

double Polygon::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) p += edge_length(i);
  return p;
}

Point2 Polygon::centroid() const {
  Point2 c;
  double a2 = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point2 p = edge_start(i);
    const Point2 q = edge_end(i);
    const double w = cross(p, q);
    a2 += w;
    c += w * (p + q);
  }
  return (1.0 / (3.0 * a2)) * c;
}

double Polygon::interior_angle(std::size_t i) const {
  const std::size_t n = vertices.size();
  const Point2 v = vertices[i];
  const Point2 next = vertices[(i + 1) % n] - v;
  const Point2 prev = vertices[(i + n - 1) % n] - v;
  // Counter-clockwise sweep from the outgoing edge to the incoming edge.
  double a = std::atan2(cross(next, prev), dot(next, prev));
  if (a <= 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey make_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

bool point_on_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double tol = 1e-12 * std::sqrt(len2);
  if (std::abs(cross(ab, p - a)) > tol * std::sqrt(len2)) return false;
  const double t = dot(p - a, ab) / len2;
  return t >= -1e-12 && t <= 1.0 + 1e-12;
}

int find_polygon_edge(const Polygon& poly, const Point2& a, const Point2& b) {
  for (std::size_t e = 0; e < poly.num_edges(); ++e) {
    if (point_on_segment(a, poly.edge_start(e), poly.edge_end(e)) &&
        point_on_segment(b, poly.edge_start(e), poly.edge_end(e))) {
      return static_cast<int>(e);
    }
  }
  return -1;
}

}  // namespace

Mesh::Mesh(Polygon polygon, std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles)
    : polygon_(std::move(polygon)), vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  // Edges owned by exactly one triangle form the boundary; the triangle's
  // counter-clockwise orientation puts the domain on the left of (a, b).
  std::map<EdgeKey, int> count;
  std::map<int, int> next_of;
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) ++count[make_key(t[k], t[(k + 1) % 3])];
  }
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      const int c = count[make_key(a, b)];
      if (c > 2) throw ValidationError("non-manifold edge in triangulation");
      if (c == 1) {
        if (next_of.contains(a)) throw ValidationError("boundary is not a simple closed curve");
        next_of[a] = b;
      }
    }
  }

  const Point2 origin = polygon_.vertices.at(0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (distance(vertices_[i], origin) < 1e-14) corner_vertex_ = static_cast<int>(i);
  }
  if (corner_vertex_ < 0 || !next_of.contains(corner_vertex_)) {
    throw ValidationError("polygon corner is not a boundary vertex of the mesh");
  }

  int v = corner_vertex_;
  do {
    const int w = next_of.at(v);
    BoundaryEdge be;
    be.vertices = {v, w};
    be.polygon_edge = find_polygon_edge(polygon_, vertices_[v], vertices_[w]);
    if (be.polygon_edge < 0) throw ValidationError("boundary edge does not lie on the polygon");
    be.normal = polygon_.edge_normal(static_cast<std::size_t>(be.polygon_edge));
    boundary_edges_.push_back(be);
    v = w;
    if (boundary_edges_.size() > next_of.size()) throw ValidationError("boundary chain does not close");
  } while (v != corner_vertex_);
  if (boundary_edges_.size() != next_of.size()) {
    throw ValidationError("boundary consists of more than one closed curve");
  }
  finalize();
}

Mesh::Mesh(Polygon polygon, std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles,
           std::vector<BoundaryEdge> boundary)
    : polygon_(std::move(polygon)),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_edges_(std::move(boundary)) {
  finalize();
}

void Mesh::finalize() {
  h_ = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto p = triangle_points(t);
    if (signed_area2(p[0], p[1], p[2]) <= 0.0) {
      throw ValidationError("triangle " + std::to_string(t) + " is degenerate or clockwise");
    }
    h_ = std::max(h_, triangle_diameter(t));
  }
  if (corner_vertex_ < 0) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (distance(vertices_[i], polygon_.vertices.at(0)) < 1e-14) corner_vertex_ = static_cast<int>(i);
    }
  }
}

std::array<Point2, 3> Mesh::triangle_points(std::size_t t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double Mesh::triangle_area(std::size_t t) const {
  const auto p = triangle_points(t);
  return 0.5 * signed_area2(p[0], p[1], p[2]);
}

double Mesh::triangle_diameter(std::size_t t) const {
  const auto p = triangle_points(t);
  return std::max({distance(p[0], p[1]), distance(p[1], p[2]), distance(p[2], p[0])});
}

double Mesh::area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) a += triangle_area(t);
  return a;
}

Polygon make_polygon(DomainId id) {
  using std::numbers::pi;
  Polygon p;
  switch (id) {
    case DomainId::convex:
      p.vertices = {{0.0, 0.0}, {1.0, 0.0}, {std::cos(2.0 * pi / 3.0), std::sin(2.0 * pi / 3.0)}};
      p.corner_angle = 2.0 * pi / 3.0;
      break;
    case DomainId::nonconvex:
      p.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {0.0, -1.0}};
      p.corner_angle = 1.5 * pi;
      break;
  }
  return p;
}

Mesh build_domain(DomainId id) {
  Polygon poly = make_polygon(id);
  if (id == DomainId::convex) {
    const auto& v = poly.vertices;
    std::vector<Point2> pts = {v[0], v[1], v[2], midpoint(v[0], v[1]), midpoint(v[1], v[2]),
                               midpoint(v[2], v[0])};
    std::vector<std::array<int, 3>> tris = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}};
    return Mesh(std::move(poly), std::move(pts), std::move(tris));
  }
  // 0:(0,0) 1:(1,0) 2:(1,1) 3:(0,1) 4:(-1,1) 5:(-1,0) 6:(-1,-1) 7:(0,-1)
  std::vector<Point2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  std::vector<std::array<int, 3>> tris = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 6}, {0, 6, 7}};
  return Mesh(std::move(poly), std::move(pts), std::move(tris));
}

Mesh build_unit_square() {
  Polygon poly;
  poly.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  poly.corner_angle = 0.5 * std::numbers::pi;
  std::vector<Point2> pts = poly.vertices;
  std::vector<std::array<int, 3>> tris = {{0, 1, 2}, {0, 2, 3}};
  return Mesh(std::move(poly), std::move(pts), std::move(tris));
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point2> pts = mesh.vertices();
  std::map<EdgeKey, int> mid;
  auto midpoint_of = [&](int a, int b) {
    const auto [it, inserted] = mid.try_emplace(make_key(a, b), static_cast<int>(pts.size()));
    if (inserted) pts.push_back(midpoint(pts[a], pts[b]));
    return it->second;
  };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * mesh.num_triangles());
  for (const auto& t : mesh.triangles()) {
    const int m01 = midpoint_of(t[0], t[1]);
    const int m12 = midpoint_of(t[1], t[2]);
    const int m20 = midpoint_of(t[2], t[0]);
    tris.push_back({t[0], m01, m20});
    tris.push_back({m01, t[1], m12});
    tris.push_back({m20, m12, t[2]});
    tris.push_back({m01, m12, m20});
  }

  std::vector<BoundaryEdge> boundary;
  boundary.reserve(2 * mesh.boundary_edges().size());
  for (const auto& be : mesh.boundary_edges()) {
    const int m = mid.at(make_key(be.vertices[0], be.vertices[1]));
    boundary.push_back({{be.vertices[0], m}, be.normal, be.polygon_edge});
    boundary.push_back({{m, be.vertices[1]}, be.normal, be.polygon_edge});
  }
  Mesh refined(mesh.polygon(), std::move(pts), std::move(tris), std::move(boundary));
  refined.corner_vertex_ = mesh.corner_vertex_;
  return refined;
}

double boundary_arclength(const Mesh& mesh) {
  double len = 0.0;
  for (const auto& be : mesh.boundary_edges()) {
    len += distance(mesh.vertices()[be.vertices[0]], mesh.vertices()[be.vertices[1]]);
  }
  return len;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  const auto old_precision = os.precision();
  os << std::setprecision(17);
  os << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' ' << mesh.boundary_edges().size() << '\n';
  for (const auto& p : mesh.vertices()) os << p.x << ' ' << p.y << '\n';
  for (const auto& t : mesh.triangles()) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& be : mesh.boundary_edges()) {
    os << be.vertices[0] << ' ' << be.vertices[1] << ' ' << be.normal.x << ' ' << be.normal.y << ' '
       << be.polygon_edge << '\n';
  }
  os.precision(old_precision);
}

}  // namespace dstokes
