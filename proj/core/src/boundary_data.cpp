#include "dstokes/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dstokes/assembly.hpp"
#include "dstokes/error.hpp"
#include "dstokes/quadrature.hpp"
#include "dstokes/solver.hpp"

namespace dstokes {

BoundaryDatum BoundaryDatum::from_field(const Polygon& polygon, std::function<Vec2(const Point2&)> field,
                                        double smoothness, bool singular_at_corner) {
  BoundaryDatum d;
  d.smoothness = smoothness;
  d.singular_at_corner = singular_at_corner;
  d.evaluator = [polygon, f = std::move(field)](int e, double s) {
    const Point2 a = polygon.edge_start(e);
    const Point2 b = polygon.edge_end(e);
    const double len = distance(a, b);
    return f(a + (s / len) * (b - a));
  };
  return d;
}

namespace {

constexpr int kGaussPoints = 6;  // exact to degree 11
constexpr int kCornerLevels = 4;

struct EdgePoint {
  double t;       // local parameter on the mesh edge
  double weight;  // includes the edge length
};

struct EdgeFrame {
  int polygon_edge;
  double s0;  // arclength of the edge start along its polygon edge
  double s1;
  double length;
};

EdgeFrame edge_frame(const Mesh& mesh, std::size_t e) {
  const auto& be = mesh.boundary_edges()[e];
  const Point2 origin = mesh.polygon().edge_start(be.polygon_edge);
  const Point2 a = mesh.vertices()[be.vertices[0]];
  const Point2 b = mesh.vertices()[be.vertices[1]];
  return {be.polygon_edge, distance(origin, a), distance(origin, b), distance(a, b)};
}

// Gauss points on [lo, hi]; if `graded_at` is lo or hi the interval is mapped
// through t = c + (x - c) u^2 so that integrands like |t - c|^a, a > -1,
// become smooth enough for Gauss-Legendre.
void add_interval(std::vector<EdgePoint>& out, const GaussRule1D& g, double lo, double hi, double len,
                  std::optional<double> graded_at) {
  if (hi <= lo) return;
  if (!graded_at) {
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      out.push_back({lo + (hi - lo) * g.nodes[q], (hi - lo) * g.weights[q] * len});
    }
    return;
  }
  const double c = *graded_at;
  const double far = (c == lo) ? hi : lo;
  const double span = std::abs(far - c);
  const double dir = far > c ? 1.0 : -1.0;
  for (std::size_t q = 0; q < g.nodes.size(); ++q) {
    const double u = g.nodes[q];
    out.push_back({c + dir * span * u * u, span * 2.0 * u * g.weights[q] * len});
  }
}

std::vector<EdgePoint> edge_quadrature(const BoundaryDatum& u, const Mesh& mesh, std::size_t e,
                                       const GaussRule1D& g) {
  const auto& be = mesh.boundary_edges()[e];
  const EdgeFrame f = edge_frame(mesh, e);

  std::vector<double> breaks = {0.0, 1.0};
  for (const auto& j : u.jumps) {
    if (j.polygon_edge != f.polygon_edge) continue;
    const double t = (j.arclength - f.s0) / (f.s1 - f.s0);
    if (t > 1e-14 && t < 1.0 - 1e-14) breaks.push_back(t);
  }

  std::optional<double> corner;
  if (u.singular_at_corner) {
    if (be.vertices[0] == mesh.corner_vertex()) corner = 0.0;
    if (be.vertices[1] == mesh.corner_vertex()) corner = 1.0;
  }
  if (corner) {
    for (int k = 1; k <= kCornerLevels; ++k) {
      const double d = std::ldexp(1.0, -k);
      breaks.push_back(*corner == 0.0 ? d : 1.0 - d);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<EdgePoint> pts;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    std::optional<double> graded;
    if (corner && (*corner == lo || *corner == hi)) graded = corner;
    add_interval(pts, g, lo, hi, f.length, graded);
  }
  return pts;
}

Vec2 eval_datum(const BoundaryDatum& u, const EdgeFrame& f, double t) {
  return u(f.polygon_edge, f.s0 + t * (f.s1 - f.s0));
}

}  // namespace

BoundaryTrace boundary_moments(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs) {
  const GaussRule1D g = gauss_legendre(kGaussPoints);
  const int degree = dofs.pairing.trace_degree();
  const int nloc = dofs.pairing.local_trace_dofs();
  BoundaryTrace b(dofs.n_boundary());
  for (std::size_t e = 0; e < mesh.boundary_edges().size(); ++e) {
    const EdgeFrame f = edge_frame(mesh, e);
    for (const auto& p : edge_quadrature(u, mesh, e, g)) {
      const Vec2 val = eval_datum(u, f, p.t);
      const auto phi = trace_basis(degree, p.t);
      for (int i = 0; i < nloc; ++i) {
        const int k = dofs.boundary_edge_dofs[e][i];
        b.x[k] += p.weight * phi[i] * val.x;
        b.y[k] += p.weight * phi[i] * val.y;
      }
    }
  }
  return b;
}

BoundaryTrace project_l2(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs) {
  const SparseMatrix M = assemble_boundary_mass(mesh, dofs);
  const BoundaryTrace b = boundary_moments(u, mesh, dofs);
  SolverOptions opts;
  opts.tol = 1e-13;
  BoundaryTrace c;
  try {
    c.x = solve_linear(M, b.x, opts);
    c.y = solve_linear(M, b.y, opts);
  } catch (const NumericalError& err) {
    throw NumericalError(std::string("project_l2: boundary mass system failed: ") + err.what());
  }
  return c;
}

BoundaryTrace interpolate_carstensen(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs) {
  BoundaryTrace c = boundary_moments(u, mesh, dofs);
  const auto m = trace_basis_integrals(mesh, dofs);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c.x[i] /= m[i];
    c.y[i] /= m[i];
  }
  return c;
}

BoundaryTrace interpolate_lagrange(const BoundaryDatum& u, const Mesh& mesh, const DofMap& dofs) {
  const Polygon& poly = mesh.polygon();
  std::vector<Point2> jump_points;
  for (const auto& j : u.jumps) {
    const Point2 a = poly.edge_start(j.polygon_edge);
    const Point2 b = poly.edge_end(j.polygon_edge);
    jump_points.push_back(a + (j.arclength / distance(a, b)) * (b - a));
  }

  BoundaryTrace c(dofs.n_boundary());
  const int nloc = dofs.pairing.local_trace_dofs();
  for (std::size_t e = 0; e < mesh.boundary_edges().size(); ++e) {
    const EdgeFrame f = edge_frame(mesh, e);
    // Each edge owns its start vertex and (P2) its midpoint.
    for (int i : {0, 2}) {
      if (i >= nloc) continue;
      const double t = i == 0 ? 0.0 : 0.5;
      const int k = dofs.boundary_edge_dofs[e][i];
      const Point2 x = dofs.nodes[dofs.boundary_velocity_dofs[k]];
      for (const auto& jp : jump_points) {
        if (distance(jp, x) <= 1e-12 * f.length) {
          throw ValidationError("interpolate_lagrange: boundary node lies on a jump of the datum");
        }
      }
      const Vec2 v = eval_datum(u, f, t);
      c.x[k] = v.x;
      c.y[k] = v.y;
    }
  }
  return c;
}

CompatibilityCorrector build_corrector(CorrectorKind kind, const Mesh& mesh, const DofMap& dofs,
                                       std::optional<Point2> center) {
  CompatibilityCorrector corr;
  if (kind == CorrectorKind::affine_field) {
    const Point2 xbar = center.value_or(mesh.polygon().centroid());
    corr.w = BoundaryTrace(dofs.n_boundary());
    for (int k = 0; k < dofs.n_boundary(); ++k) {
      const Point2 x = dofs.nodes[dofs.boundary_velocity_dofs[k]];
      corr.w.x[k] = 0.5 * (x.x - xbar.x);
      corr.w.y[k] = 0.5 * (x.y - xbar.y);
    }
  } else {
    BoundaryDatum normal;
    const Polygon poly = mesh.polygon();
    normal.evaluator = [poly](int e, double) { return poly.edge_normal(e); };
    corr.w = project_l2(normal, mesh, dofs);
  }
  corr.flux = boundary_flux(corr.w, mesh, dofs);
  if (std::abs(corr.flux) < 1e-14) throw NumericalError("build_corrector: corrector has zero boundary flux");
  return corr;
}

BoundaryTrace enforce_compatibility(const BoundaryTrace& trace, const CompatibilityCorrector& corrector,
                                    const Mesh& mesh, const DofMap& dofs) {
  if (std::abs(corrector.flux) < 1e-14) throw ValidationError("enforce_compatibility: corrector flux vanishes");
  if (corrector.w.size() != trace.size()) throw ValidationError("enforce_compatibility: size mismatch");
  const double lambda = boundary_flux(trace, mesh, dofs) / corrector.flux;
  BoundaryTrace out = trace;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.x[i] -= lambda * corrector.w.x[i];
    out.y[i] -= lambda * corrector.w.y[i];
  }
  return out;
}

Vec2 evaluate_trace(const BoundaryTrace& trace, const Mesh&, const DofMap& dofs, std::size_t edge, double t) {
  const auto phi = trace_basis(dofs.pairing.trace_degree(), t);
  Vec2 v;
  for (int i = 0; i < dofs.pairing.local_trace_dofs(); ++i) {
    const int k = dofs.boundary_edge_dofs[edge][i];
    v.x += phi[i] * trace.x[k];
    v.y += phi[i] * trace.y[k];
  }
  return v;
}

double boundary_l2_error(const BoundaryDatum& u, const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs) {
  const GaussRule1D g = gauss_legendre(kGaussPoints);
  double sum = 0.0;
  for (std::size_t e = 0; e < mesh.boundary_edges().size(); ++e) {
    const EdgeFrame f = edge_frame(mesh, e);
    for (const auto& p : edge_quadrature(u, mesh, e, g)) {
      const Vec2 d = eval_datum(u, f, p.t) - evaluate_trace(trace, mesh, dofs, e, p.t);
      sum += p.weight * dot(d, d);
    }
  }
  return std::sqrt(sum);
}

double boundary_inner(const BoundaryTrace& a, const BoundaryTrace& b, const Mesh& mesh, const DofMap& dofs) {
  const SparseMatrix M = assemble_boundary_mass(mesh, dofs);
  const auto mx = M.multiply(b.x);
  const auto my = M.multiply(b.y);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.x[i] * mx[i] + a.y[i] * my[i];
  return s;
}

double datum_flux(const BoundaryDatum& u, const Mesh& mesh) {
  const GaussRule1D g = gauss_legendre(kGaussPoints);
  double flux = 0.0;
  for (std::size_t e = 0; e < mesh.boundary_edges().size(); ++e) {
    const EdgeFrame f = edge_frame(mesh, e);
    const Point2 n = mesh.boundary_edges()[e].normal;
    for (const auto& p : edge_quadrature(u, mesh, e, g)) flux += p.weight * dot(eval_datum(u, f, p.t), n);
  }
  return flux;
}

}  // namespace dstokes
