#include "dstokes/fe_spaces.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "dstokes/error.hpp"

namespace dstokes {

namespace {

// d/dxi = d/dl1 - d/dl0, d/deta = d/dl2 - d/dl0.
std::array<double, 2> to_reference(double d0, double d1, double d2) { return {d1 - d0, d2 - d0}; }

void check_inside(const Barycentric& l) {
  constexpr double tol = 1e-12;
  if (l[0] < -tol || l[1] < -tol || l[2] < -tol || std::abs(l[0] + l[1] + l[2] - 1.0) > 1e-10) {
    throw ValidationError("shape_values: point outside the reference triangle");
  }
}

}  // namespace

ShapeEval shape_values(ElementPairing pairing, FieldKind which, const Barycentric& l) {
  check_inside(l);
  ShapeEval s;
  if (which == FieldKind::pressure || pairing.kind == PairingKind::mini) {
    s.values = {l[0], l[1], l[2]};
    s.gradients = {to_reference(1, 0, 0), to_reference(0, 1, 0), to_reference(0, 0, 1)};
    if (which == FieldKind::velocity) {
      s.values.push_back(27.0 * l[0] * l[1] * l[2]);
      s.gradients.push_back(to_reference(27.0 * l[1] * l[2], 27.0 * l[0] * l[2], 27.0 * l[0] * l[1]));
    }
    return s;
  }

  s.values = {l[0] * (2.0 * l[0] - 1.0), l[1] * (2.0 * l[1] - 1.0), l[2] * (2.0 * l[2] - 1.0),
              4.0 * l[0] * l[1],         4.0 * l[1] * l[2],         4.0 * l[2] * l[0]};
  s.gradients = {
      to_reference(4.0 * l[0] - 1.0, 0, 0),
      to_reference(0, 4.0 * l[1] - 1.0, 0),
      to_reference(0, 0, 4.0 * l[2] - 1.0),
      to_reference(4.0 * l[1], 4.0 * l[0], 0),
      to_reference(0, 4.0 * l[2], 4.0 * l[1]),
      to_reference(4.0 * l[2], 0, 4.0 * l[0]),
  };
  return s;
}

std::array<double, 3> trace_basis(int degree, double t) {
  if (degree == 1) return {1.0 - t, t, 0.0};
  return {(1.0 - t) * (1.0 - 2.0 * t), t * (2.0 * t - 1.0), 4.0 * t * (1.0 - t)};
}

ElementGeometry::ElementGeometry(const std::array<Point2, 3>& v) : vertices(v) {
  const double j00 = v[1].x - v[0].x;
  const double j01 = v[2].x - v[0].x;
  const double j10 = v[1].y - v[0].y;
  const double j11 = v[2].y - v[0].y;
  const double det = j00 * j11 - j01 * j10;
  if (!(det > 0.0)) throw NumericalError("degenerate or inverted element");
  area = 0.5 * det;
  jit = {{{j11 / det, -j10 / det}, {-j01 / det, j00 / det}}};
}

DofMap build_dofmap(const Mesh& mesh, ElementPairing pairing) {
  DofMap dm;
  dm.pairing = pairing;
  const int nv = static_cast<int>(mesh.num_vertices());
  const int nt = static_cast<int>(mesh.num_triangles());
  dm.n_pressure = nv;
  dm.nodes = mesh.vertices();
  dm.cell_velocity_dofs.resize(nt);
  dm.cell_pressure_dofs.resize(nt);

  std::map<std::pair<int, int>, int> edge_id;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles()[t];
    dm.cell_pressure_dofs[t] = tri;
    auto& cell = dm.cell_velocity_dofs[t];
    cell = {tri[0], tri[1], tri[2], -1, -1, -1};
    if (pairing.kind == PairingKind::taylor_hood) {
      for (int k = 0; k < 3; ++k) {
        const int a = tri[k];
        const int b = tri[(k + 1) % 3];
        const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
        const auto [it, inserted] = edge_id.try_emplace(key, static_cast<int>(dm.edges.size()));
        if (inserted) {
          dm.edges.push_back({key.first, key.second});
          dm.nodes.push_back(midpoint(mesh.vertices()[a], mesh.vertices()[b]));
        }
        cell[3 + k] = nv + it->second;
      }
    } else {
      const auto p = mesh.triangle_points(t);
      cell[3] = nv + t;
      dm.nodes.push_back((1.0 / 3.0) * (p[0] + p[1] + p[2]));
    }
  }
  dm.n_velocity_per_component = static_cast<int>(dm.nodes.size());

  dm.boundary_index.assign(dm.n_velocity_per_component, -1);
  const auto& bedges = mesh.boundary_edges();
  std::vector<int> start_index(bedges.size());
  std::vector<int> mid_index(bedges.size(), -1);
  for (std::size_t e = 0; e < bedges.size(); ++e) {
    const int a = bedges[e].vertices[0];
    start_index[e] = static_cast<int>(dm.boundary_velocity_dofs.size());
    dm.boundary_velocity_dofs.push_back(a);
    if (pairing.kind == PairingKind::taylor_hood) {
      const int b = bedges[e].vertices[1];
      const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
      mid_index[e] = static_cast<int>(dm.boundary_velocity_dofs.size());
      dm.boundary_velocity_dofs.push_back(nv + edge_id.at(key));
    }
  }
  for (std::size_t i = 0; i < dm.boundary_velocity_dofs.size(); ++i) {
    dm.boundary_index[dm.boundary_velocity_dofs[i]] = static_cast<int>(i);
  }
  dm.boundary_edge_dofs.resize(bedges.size());
  for (std::size_t e = 0; e < bedges.size(); ++e) {
    dm.boundary_edge_dofs[e] = {start_index[e], start_index[(e + 1) % bedges.size()], mid_index[e]};
  }
  return dm;
}

}  // namespace dstokes
