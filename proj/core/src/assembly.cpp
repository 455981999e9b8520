#include "dstokes/assembly.hpp"

#include <numeric>

#include "dstokes/error.hpp"
#include "dstokes/quadrature.hpp"

namespace dstokes {

namespace {

struct TabulatedElement {
  QuadratureRule rule;
  std::vector<ShapeEval> velocity;
  std::vector<ShapeEval> pressure;
};

TabulatedElement tabulate(ElementPairing pairing) {
  TabulatedElement tab{triangle_quadrature(pairing.assembly_quadrature_degree()), {}, {}};
  for (const auto& p : tab.rule.points) {
    tab.velocity.push_back(shape_values(pairing, FieldKind::velocity, p));
    tab.pressure.push_back(shape_values(pairing, FieldKind::pressure, p));
  }
  return tab;
}

// Integrals of the trace basis over the unit interval.
std::array<double, 3> unit_trace_integrals(int degree) {
  if (degree == 1) return {0.5, 0.5, 0.0};
  return {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
}

void check_trace(const BoundaryTrace& trace, const DofMap& dofs) {
  if (trace.x.size() != static_cast<std::size_t>(dofs.n_boundary()) || trace.y.size() != trace.x.size()) {
    throw ValidationError("boundary trace size does not match the trace space dimension");
  }
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofs) {
  const auto tab = tabulate(dofs.pairing);
  const int nloc = dofs.pairing.local_velocity_dofs();
  const int n = dofs.n_velocity_per_component;
  std::vector<Triplet> trip;
  trip.reserve(mesh.num_triangles() * nloc * nloc * 2);
  std::vector<std::array<double, 2>> grads(nloc);
  std::vector<double> local(nloc * nloc);

  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry geo(mesh.triangle_points(t));
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const double w = tab.rule.weights[q] * 2.0 * geo.area;
      for (int i = 0; i < nloc; ++i) grads[i] = geo.physical_gradient(tab.velocity[q].gradients[i]);
      for (int i = 0; i < nloc; ++i) {
        for (int j = 0; j < nloc; ++j) {
          local[i * nloc + j] += w * (grads[i][0] * grads[j][0] + grads[i][1] * grads[j][1]);
        }
      }
    }
    const auto& cell = dofs.cell_velocity_dofs[t];
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < nloc; ++i) {
        for (int j = 0; j < nloc; ++j) {
          trip.push_back({c * n + cell[i], c * n + cell[j], local[i * nloc + j]});
        }
      }
    }
  }
  return SparseMatrix(2 * n, 2 * n, std::move(trip));
}

SparseMatrix assemble_divergence(const Mesh& mesh, const DofMap& dofs) {
  const auto tab = tabulate(dofs.pairing);
  const int nloc = dofs.pairing.local_velocity_dofs();
  const int n = dofs.n_velocity_per_component;
  std::vector<Triplet> trip;
  trip.reserve(mesh.num_triangles() * 3 * nloc * 2);

  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry geo(mesh.triangle_points(t));
    std::array<std::array<double, 12>, 3> local{};  // [q_i][c * nloc + j]
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const double w = tab.rule.weights[q] * 2.0 * geo.area;
      for (int j = 0; j < nloc; ++j) {
        const auto g = geo.physical_gradient(tab.velocity[q].gradients[j]);
        for (int i = 0; i < 3; ++i) {
          const double wq = w * tab.pressure[q].values[i];
          local[i][j] += wq * g[0];
          local[i][nloc + j] += wq * g[1];
        }
      }
    }
    const auto& cell = dofs.cell_velocity_dofs[t];
    const auto& pcell = dofs.cell_pressure_dofs[t];
    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 2; ++c) {
        for (int j = 0; j < nloc; ++j) trip.push_back({pcell[i], c * n + cell[j], local[i][c * nloc + j]});
      }
    }
  }
  return SparseMatrix(dofs.n_pressure, 2 * n, std::move(trip));
}

SparseMatrix assemble_boundary_mass(const Mesh& mesh, const DofMap& dofs) {
  const int degree = dofs.pairing.trace_degree();
  const int nloc = dofs.pairing.local_trace_dofs();
  const GaussRule1D g = gauss_legendre(3);
  std::vector<Triplet> trip;
  const auto& bedges = mesh.boundary_edges();
  for (std::size_t e = 0; e < bedges.size(); ++e) {
    const double len = distance(mesh.vertices()[bedges[e].vertices[0]], mesh.vertices()[bedges[e].vertices[1]]);
    std::array<std::array<double, 3>, 3> local{};
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      const auto phi = trace_basis(degree, g.nodes[q]);
      for (int i = 0; i < nloc; ++i) {
        for (int j = 0; j < nloc; ++j) local[i][j] += g.weights[q] * len * phi[i] * phi[j];
      }
    }
    const auto& bd = dofs.boundary_edge_dofs[e];
    for (int i = 0; i < nloc; ++i) {
      for (int j = 0; j < nloc; ++j) trip.push_back({bd[i], bd[j], local[i][j]});
    }
  }
  return SparseMatrix(dofs.n_boundary(), dofs.n_boundary(), std::move(trip));
}

std::vector<double> pressure_integrals(const Mesh& mesh, const DofMap& dofs) {
  std::vector<double> s(dofs.n_pressure, 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double a = mesh.triangle_area(t);
    for (int v : dofs.cell_pressure_dofs[t]) s[v] += a / 3.0;
  }
  return s;
}

std::vector<double> trace_basis_integrals(const Mesh& mesh, const DofMap& dofs) {
  const auto unit = unit_trace_integrals(dofs.pairing.trace_degree());
  std::vector<double> m(dofs.n_boundary(), 0.0);
  const auto& bedges = mesh.boundary_edges();
  for (std::size_t e = 0; e < bedges.size(); ++e) {
    const double len = distance(mesh.vertices()[bedges[e].vertices[0]], mesh.vertices()[bedges[e].vertices[1]]);
    for (int i = 0; i < dofs.pairing.local_trace_dofs(); ++i) m[dofs.boundary_edge_dofs[e][i]] += len * unit[i];
  }
  return m;
}

double boundary_flux(const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs) {
  check_trace(trace, dofs);
  const auto unit = unit_trace_integrals(dofs.pairing.trace_degree());
  const auto& bedges = mesh.boundary_edges();
  double flux = 0.0;
  for (std::size_t e = 0; e < bedges.size(); ++e) {
    const auto& be = bedges[e];
    const double len = distance(mesh.vertices()[be.vertices[0]], mesh.vertices()[be.vertices[1]]);
    double ix = 0.0;
    double iy = 0.0;
    for (int i = 0; i < dofs.pairing.local_trace_dofs(); ++i) {
      const int b = dofs.boundary_edge_dofs[e][i];
      ix += unit[i] * trace.x[b];
      iy += unit[i] * trace.y[b];
    }
    flux += len * (be.normal.x * ix + be.normal.y * iy);
  }
  return flux;
}

double compute_delta_h(const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs) {
  return boundary_flux(trace, mesh, dofs) / mesh.polygon().area();
}

std::vector<double> extend_trace(const BoundaryTrace& trace, const DofMap& dofs) {
  check_trace(trace, dofs);
  const int n = dofs.n_velocity_per_component;
  std::vector<double> full(2 * n, 0.0);
  for (int b = 0; b < dofs.n_boundary(); ++b) {
    const int d = dofs.boundary_velocity_dofs[b];
    full[d] = trace.x[b];
    full[n + d] = trace.y[b];
  }
  return full;
}

BorderedSystem assemble_bordered_system(const Mesh& mesh, const DofMap& dofs, const BoundaryTrace& trace,
                                        double alpha_reg) {
  check_trace(trace, dofs);
  if (alpha_reg < 0.0) throw ValidationError("alpha_reg must be nonnegative");
  const int n = dofs.n_velocity_per_component;

  BorderedSystem sys;
  sys.alpha_reg = alpha_reg;
  sys.trace = trace;
  sys.n_pressure = dofs.n_pressure;
  sys.extension = extend_trace(trace, dofs);

  std::vector<int> to_interior(2 * n, -1);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < n; ++d) {
      if (dofs.is_boundary(d)) continue;
      to_interior[c * n + d] = static_cast<int>(sys.interior_dofs.size());
      sys.interior_dofs.push_back(c * n + d);
    }
  }
  const int ni = sys.n_interior();

  const SparseMatrix K = assemble_stiffness(mesh, dofs);
  const SparseMatrix D = assemble_divergence(mesh, dofs);
  const auto Ke = K.multiply(sys.extension);

  std::vector<Triplet> a_trip;
  for (const auto& t : K.to_triplets()) {
    const int i = to_interior[t.row];
    const int j = to_interior[t.col];
    if (i >= 0 && j >= 0) a_trip.push_back({i, j, t.value});
  }
  sys.A = SparseMatrix(ni, ni, std::move(a_trip));

  std::vector<Triplet> b_trip;
  for (const auto& t : D.to_triplets()) {
    const int j = to_interior[t.col];
    if (j >= 0) b_trip.push_back({t.row, j, -t.value});
  }
  sys.B = SparseMatrix(dofs.n_pressure, ni, std::move(b_trip));

  sys.rhs_f.resize(ni);
  for (int i = 0; i < ni; ++i) sys.rhs_f[i] = -Ke[sys.interior_dofs[i]];
  sys.rhs_g = D.multiply(sys.extension);
  sys.s = pressure_integrals(mesh, dofs);
  sys.delta_target = alpha_reg > 0.0 ? alpha_reg * compute_delta_h(trace, mesh, dofs) : 0.0;
  return sys;
}

SparseMatrix BorderedSystem::matrix() const {
  const int ni = n_interior();
  const int p0 = 1 + ni;
  std::vector<Triplet> trip;
  trip.reserve(1 + A.nnz() + 2 * B.nnz() + 2 * s.size());
  trip.push_back({0, 0, alpha_reg});
  for (int i = 0; i < n_pressure; ++i) {
    trip.push_back({0, p0 + i, s[i]});
    trip.push_back({p0 + i, 0, s[i]});
  }
  for (const auto& t : A.to_triplets()) trip.push_back({1 + t.row, 1 + t.col, t.value});
  for (const auto& t : B.to_triplets()) {
    trip.push_back({p0 + t.row, 1 + t.col, t.value});
    trip.push_back({1 + t.col, p0 + t.row, t.value});
  }
  return SparseMatrix(size(), size(), std::move(trip));
}

std::vector<double> BorderedSystem::rhs() const {
  std::vector<double> r;
  r.reserve(size());
  r.push_back(delta_target);
  r.insert(r.end(), rhs_f.begin(), rhs_f.end());
  r.insert(r.end(), rhs_g.begin(), rhs_g.end());
  return r;
}

double recover_delta(const BorderedSystem& system, const std::vector<double>& y0) {
  const auto by = system.B.multiply(y0);
  double num = 0.0;
  for (int i = 0; i < system.n_pressure; ++i) num += system.rhs_g[i] - by[i];
  const double den = std::accumulate(system.s.begin(), system.s.end(), 0.0);
  return num / den;
}

}  // namespace dstokes
