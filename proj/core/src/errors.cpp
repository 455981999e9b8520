#include "dstokes/errors.hpp"

#include <cmath>

#include "dstokes/error.hpp"
#include "dstokes/quadrature.hpp"

namespace dstokes {

namespace {

struct QuadPoint {
  Barycentric bary;  // in the parent element
  double weight;     // physical weight
};

Barycentric combine(const std::array<Barycentric, 3>& sub, const Barycentric& l) {
  Barycentric out{};
  for (int k = 0; k < 3; ++k) out[k] = l[0] * sub[0][k] + l[1] * sub[1][k] + l[2] * sub[2][k];
  return out;
}

Barycentric mid(const Barycentric& a, const Barycentric& b) {
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

void add_rule(std::vector<QuadPoint>& out, const QuadratureRule& rule, const std::array<Barycentric, 3>& sub,
              double sub_area) {
  // Reference weights sum to 1/2.
  for (std::size_t q = 0; q < rule.size(); ++q) out.push_back({combine(sub, rule.points[q]), 2.0 * sub_area * rule.weights[q]});
}

// Dyadic refinement toward sub[0].
void corner_points(std::vector<QuadPoint>& out, const QuadratureRule& regular, const QuadratureRule& collapsed,
                   std::array<Barycentric, 3> sub, double sub_area, int depth) {
  for (int d = 0; d < depth; ++d) {
    const Barycentric m01 = mid(sub[0], sub[1]);
    const Barycentric m12 = mid(sub[1], sub[2]);
    const Barycentric m20 = mid(sub[2], sub[0]);
    const double child = 0.25 * sub_area;
    add_rule(out, regular, {m01, sub[1], m12}, child);
    add_rule(out, regular, {m20, m12, sub[2]}, child);
    add_rule(out, regular, {m01, m12, m20}, child);
    sub = {sub[0], m01, m20};
    sub_area = child;
  }
  add_rule(out, collapsed, sub, sub_area);
}

class ElementQuadrature {
 public:
  ElementQuadrature(const Mesh& mesh, const ErrorQuadrature& q)
      : mesh_(mesh), q_(q), regular_(triangle_quadrature(q.degree)), collapsed_(collapsed_quadrature(q.degree)) {
    if (q.corner_depth < 0) throw ValidationError("corner_depth must be nonnegative");
  }

  std::vector<QuadPoint> points(std::size_t t) const {
    std::vector<QuadPoint> out;
    const auto& tri = mesh_.triangles()[t];
    const double area = mesh_.triangle_area(t);
    int corner = -1;
    if (q_.singular_corner) {
      for (int k = 0; k < 3; ++k) {
        if (tri[k] == mesh_.corner_vertex()) corner = k;
      }
    }
    if (corner < 0) {
      add_rule(out, regular_, {Barycentric{1, 0, 0}, Barycentric{0, 1, 0}, Barycentric{0, 0, 1}}, area);
      return out;
    }
    std::array<Barycentric, 3> sub{};
    for (int k = 0; k < 3; ++k) {
      Barycentric e{0, 0, 0};
      e[(corner + k) % 3] = 1.0;
      sub[k] = e;
    }
    corner_points(out, regular_, collapsed_, sub, area, q_.corner_depth);
    return out;
  }

 private:
  const Mesh& mesh_;
  ErrorQuadrature q_;
  QuadratureRule regular_;
  QuadratureRule collapsed_;
};

Vec2 fe_velocity(const DiscreteSolution& sol, const DofMap& dofs, std::size_t t, const ShapeEval& s) {
  const int n = dofs.n_velocity_per_component;
  const auto& cell = dofs.cell_velocity_dofs[t];
  Vec2 v;
  for (int i = 0; i < dofs.pairing.local_velocity_dofs(); ++i) {
    v.x += s.values[i] * sol.velocity[cell[i]];
    v.y += s.values[i] * sol.velocity[n + cell[i]];
  }
  return v;
}

Mat2 fe_velocity_gradient(const DiscreteSolution& sol, const DofMap& dofs, const ElementGeometry& geo, std::size_t t,
                          const ShapeEval& s) {
  const int n = dofs.n_velocity_per_component;
  const auto& cell = dofs.cell_velocity_dofs[t];
  Mat2 g{};
  for (int i = 0; i < dofs.pairing.local_velocity_dofs(); ++i) {
    const auto gp = geo.physical_gradient(s.gradients[i]);
    for (int j = 0; j < 2; ++j) {
      g[0][j] += gp[j] * sol.velocity[cell[i]];
      g[1][j] += gp[j] * sol.velocity[n + cell[i]];
    }
  }
  return g;
}

double fe_pressure(const DiscreteSolution& sol, const DofMap& dofs, std::size_t t, const Barycentric& l) {
  const auto& pc = dofs.cell_pressure_dofs[t];
  return l[0] * sol.pressure[pc[0]] + l[1] * sol.pressure[pc[1]] + l[2] * sol.pressure[pc[2]];
}

void require_positive_alpha(const SingularSolution& exact, const char* what) {
  if (!(exact.alpha() > 0.0)) {
    throw ValidationError(std::string(what) + ": requires alpha > 0 (exact solution not in the space)");
  }
}

}  // namespace

double l2_velocity_error(const DiscreteSolution& sol, const VelocityField& exact, const Mesh& mesh,
                         const DofMap& dofs, const ErrorQuadrature& quad) {
  const ElementQuadrature eq(mesh, quad);
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto verts = mesh.triangle_points(t);
    double local = 0.0;
    for (const auto& qp : eq.points(t)) {
      const auto s = shape_values(dofs.pairing, FieldKind::velocity, qp.bary);
      const Vec2 d = exact(from_barycentric(verts, qp.bary)) - fe_velocity(sol, dofs, t, s);
      local += qp.weight * dot(d, d);
    }
    sum += local;
  }
  return std::sqrt(sum);
}

double l2_velocity_error(const DiscreteSolution& sol, const SingularSolution& exact, const Mesh& mesh,
                         const DofMap& dofs, const ErrorQuadrature& quad) {
  return l2_velocity_error(sol, [&exact](const Point2& x) { return exact.velocity(x); }, mesh, dofs, quad);
}

double h1_seminorm_velocity_error(const DiscreteSolution& sol, const GradientField& exact, const Mesh& mesh,
                                  const DofMap& dofs, const ErrorQuadrature& quad) {
  const ElementQuadrature eq(mesh, quad);
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const ElementGeometry geo(mesh.triangle_points(t));
    double local = 0.0;
    for (const auto& qp : eq.points(t)) {
      const auto s = shape_values(dofs.pairing, FieldKind::velocity, qp.bary);
      const Mat2 ge = exact(from_barycentric(geo.vertices, qp.bary));
      const Mat2 gh = fe_velocity_gradient(sol, dofs, geo, t, s);
      double d2 = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) d2 += (ge[i][j] - gh[i][j]) * (ge[i][j] - gh[i][j]);
      }
      local += qp.weight * d2;
    }
    sum += local;
  }
  return std::sqrt(sum);
}

double h1_seminorm_velocity_error(const DiscreteSolution& sol, const SingularSolution& exact, const Mesh& mesh,
                                  const DofMap& dofs, const ErrorQuadrature& quad) {
  require_positive_alpha(exact, "h1_seminorm_velocity_error");
  return h1_seminorm_velocity_error(sol, [&exact](const Point2& x) { return exact.velocity_gradient(x); }, mesh,
                                    dofs, quad);
}

double l2_pressure_error(const DiscreteSolution& sol, const ScalarField& exact, const Mesh& mesh, const DofMap& dofs,
                         const ErrorQuadrature& quad) {
  const ElementQuadrature eq(mesh, quad);
  // Two passes: means first, then the shifted difference.
  std::vector<std::vector<QuadPoint>> pts(mesh.num_triangles());
  std::vector<std::vector<double>> pex(mesh.num_triangles());
  double int_p = 0.0;
  double int_ph = 0.0;
  double area = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto verts = mesh.triangle_points(t);
    pts[t] = eq.points(t);
    for (const auto& qp : pts[t]) {
      const double pe = exact(from_barycentric(verts, qp.bary));
      pex[t].push_back(pe);
      int_p += qp.weight * pe;
      int_ph += qp.weight * fe_pressure(sol, dofs, t, qp.bary);
      area += qp.weight;
    }
  }
  const double mean_p = int_p / area;
  const double mean_ph = int_ph / area;
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    for (std::size_t q = 0; q < pts[t].size(); ++q) {
      const double d = (pex[t][q] - mean_p) - (fe_pressure(sol, dofs, t, pts[t][q].bary) - mean_ph);
      sum += pts[t][q].weight * d * d;
    }
  }
  return std::sqrt(sum);
}

double l2_pressure_error(const DiscreteSolution& sol, const SingularSolution& exact, const Mesh& mesh,
                         const DofMap& dofs, const ErrorQuadrature& quad) {
  require_positive_alpha(exact, "l2_pressure_error");
  return l2_pressure_error(sol, [&exact](const Point2& x) { return exact.pressure(x); }, mesh, dofs, quad);
}

double eoc(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) throw ValidationError("eoc: errors must be positive");
  return std::log2(e_coarse / e_fine);
}

double expected_order(double alpha, double omega, int k) {
  const double t = 0.5 + alpha;
  const XiResult xi = solve_xi(omega);
  const double s = xi.convex ? 1.0 : xi.value;
  return s + std::min(t - 0.5, static_cast<double>(k));
}

std::vector<double> interpolate_velocity(const VelocityField& field, const Mesh& mesh, const DofMap& dofs) {
  const int n = dofs.n_velocity_per_component;
  std::vector<double> v(2 * n, 0.0);
  for (int d = 0; d < n; ++d) {
    if (dofs.pairing.kind == PairingKind::mini && d >= static_cast<int>(mesh.num_vertices())) continue;
    const Vec2 f = field(dofs.nodes[d]);
    v[d] = f.x;
    v[n + d] = f.y;
  }
  if (dofs.pairing.kind == PairingKind::mini) {
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      const auto& cell = dofs.cell_velocity_dofs[t];
      const Vec2 f = field(dofs.nodes[cell[3]]);
      double px = 0.0, py = 0.0;
      for (int i = 0; i < 3; ++i) {
        px += v[cell[i]] / 3.0;
        py += v[n + cell[i]] / 3.0;
      }
      v[cell[3]] = f.x - px;
      v[n + cell[3]] = f.y - py;
    }
  }
  return v;
}

std::vector<double> interpolate_pressure(const ScalarField& field, const Mesh& mesh, const DofMap& dofs) {
  std::vector<double> p(dofs.n_pressure);
  for (int i = 0; i < dofs.n_pressure; ++i) p[i] = field(mesh.vertices()[i]);
  return p;
}

double divergence_integral(const std::vector<double>& velocity, const Mesh& mesh, const DofMap& dofs) {
  // The nodal P1 pressure basis sums to one, so summing the rows of D gives (div y_h, 1).
  const SparseMatrix D = assemble_divergence(mesh, dofs);
  double s = 0.0;
  for (double v : D.multiply(velocity)) s += v;
  return s;
}

double galerkin_residual(const DiscreteSolution& sol, const Mesh& mesh, const DofMap& dofs) {
  const SparseMatrix K = assemble_stiffness(mesh, dofs);
  const SparseMatrix D = assemble_divergence(mesh, dofs);
  const auto s = pressure_integrals(mesh, dofs);
  const int n = dofs.n_velocity_per_component;
  const auto ky = K.multiply(sol.velocity);
  const auto dtp = D.multiply_transposed(sol.pressure);
  double worst = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < n; ++d) {
      if (dofs.is_boundary(d)) continue;
      worst = std::max(worst, std::abs(ky[c * n + d] - dtp[c * n + d]));
    }
  }
  const auto dy = D.multiply(sol.velocity);
  for (int i = 0; i < dofs.n_pressure; ++i) worst = std::max(worst, std::abs(dy[i] - sol.delta_h * s[i]));
  return worst;
}

double pressure_mean_integral(const DiscreteSolution& sol, const Mesh& mesh, const DofMap& dofs) {
  const auto s = pressure_integrals(mesh, dofs);
  double v = 0.0;
  for (int i = 0; i < dofs.n_pressure; ++i) v += s[i] * sol.pressure[i];
  return v;
}

}  // namespace dstokes
