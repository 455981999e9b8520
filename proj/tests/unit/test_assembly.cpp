#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dstokes/assembly.hpp"
#include "dstokes/boundary_data.hpp"
#include "dstokes/error.hpp"
#include "dstokes/errors.hpp"
#include "dstokes/quadrature.hpp"

using namespace dstokes;

namespace {

Mesh reference_triangle_mesh() {
  Polygon p;
  p.vertices = {{0, 0}, {1, 0}, {0, 1}};
  p.corner_angle = std::numbers::pi / 2;
  return Mesh(p, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
}

// (div f, q_i) with q_i the vertex hat functions, by direct quadrature.
std::vector<double> divergence_moments(const Mesh& m, double (*divf)(const Point2&)) {
  const auto rule = triangle_quadrature(8);
  std::vector<double> out(m.num_vertices(), 0.0);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto p = m.triangle_points(t);
    const double a = m.triangle_area(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = from_barycentric(p, rule.points[q]);
      for (int k = 0; k < 3; ++k) out[m.triangles()[t][k]] += 2 * a * rule.weights[q] * rule.points[q][k] * divf(x);
    }
  }
  return out;
}

}  // namespace

TEST(Stiffness, P1BlockOnReferenceTriangle) {
  const Mesh m = reference_triangle_mesh();
  const DofMap d = build_dofmap(m, ElementPairing::mini());
  const SparseMatrix K = assemble_stiffness(m, d);
  const double expected[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(K(i, j), expected[i][j], 1e-15);
      EXPECT_NEAR(K(d.n_velocity_per_component + i, d.n_velocity_per_component + j), expected[i][j], 1e-15);
    }
  }
  // Vertex-bubble coupling vanishes; the bubble self term is 81/10.
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(K(i, 3), 0.0, 1e-15);
  EXPECT_NEAR(K(3, 3), 8.1, 1e-13);
}

TEST(Stiffness, SymmetricWithConstantKernel) {
  for (auto pairing : {ElementPairing::taylor_hood(), ElementPairing::mini()}) {
    const Mesh m = refine_uniform(build_domain(DomainId::nonconvex));
    const DofMap d = build_dofmap(m, pairing);
    const SparseMatrix K = assemble_stiffness(m, d);
    EXPECT_LT(K.asymmetry(), 1e-13);
    // Constant field: vertex and edge dofs one, bubbles zero.
    std::vector<double> ones(K.cols(), 0.0);
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < d.n_velocity_per_component; ++i) {
        const bool bubble = pairing == ElementPairing::mini() && i >= static_cast<int>(m.num_vertices());
        ones[c * d.n_velocity_per_component + i] = bubble ? 0.0 : 1.0;
      }
    }
    EXPECT_LT(norm_inf(K.multiply(ones)), 1e-12);
  }
}

TEST(Stiffness, EnergyOfQuadraticField) {
  // f = (x^2, x y): |grad f|^2 = 4x^2 + y^2 + x^2 integrated over the unit square = 5/3 + 1/3 = 2.
  const Mesh m = refine_uniform(build_unit_square());
  const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
  const auto v = interpolate_velocity([](const Point2& x) { return Vec2{x.x * x.x, x.x * x.y}; }, m, d);
  const auto Kv = assemble_stiffness(m, d).multiply(v);
  double e = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) e += v[i] * Kv[i];
  EXPECT_NEAR(e, 2.0, 1e-13);
}

TEST(Divergence, MatchesDirectQuadratureForPolynomialFields) {
  const Mesh m = refine_uniform(build_domain(DomainId::nonconvex));
  {
    const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
    const auto v = interpolate_velocity([](const Point2& x) { return Vec2{x.x * x.x, x.x * x.y - x.y}; }, m, d);
    const auto Dv = assemble_divergence(m, d).multiply(v);
    const auto ref = divergence_moments(m, [](const Point2& x) { return 3.0 * x.x - 1.0; });
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(Dv[i], ref[i], 1e-14);
  }
  {
    const DofMap d = build_dofmap(m, ElementPairing::mini());
    const auto v = interpolate_velocity([](const Point2& x) { return Vec2{2.0 * x.x + x.y, -x.x + 0.5 * x.y}; }, m, d);
    const auto Dv = assemble_divergence(m, d).multiply(v);
    const auto ref = divergence_moments(m, [](const Point2&) { return 2.5; });
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(Dv[i], ref[i], 1e-14);
  }
}

TEST(BoundaryMass, UnitSquareOneElementPerSide) {
  const Mesh m = build_unit_square();
  const SparseMatrix M = assemble_boundary_mass(m, build_dofmap(m, ElementPairing::mini()));
  const double expected[4][4] = {{4, 1, 0, 1}, {1, 4, 1, 0}, {0, 1, 4, 1}, {1, 0, 1, 4}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(M(i, j), expected[i][j] / 6.0, 1e-15);
  }
}

TEST(BoundaryMass, P2RowSumsAreBasisIntegrals) {
  const Mesh m = refine_uniform(build_domain(DomainId::convex));
  const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
  const SparseMatrix M = assemble_boundary_mass(m, d);
  const auto ones = std::vector<double>(d.n_boundary(), 1.0);
  const auto rows = M.multiply(ones);
  const auto ints = trace_basis_integrals(m, d);
  for (int i = 0; i < d.n_boundary(); ++i) EXPECT_NEAR(rows[i], ints[i], 1e-15);
}

TEST(PressureIntegrals, SumToArea) {
  const Mesh m = refine_uniform(build_domain(DomainId::nonconvex));
  const auto s = pressure_integrals(m, build_dofmap(m, ElementPairing::taylor_hood()));
  double total = 0.0;
  for (double v : s) total += v;
  EXPECT_NEAR(total, 3.0, 1e-14);
}

TEST(BoundaryFlux, AffineFieldFluxEqualsArea) {
  // div(1/2 (x - c)) = 1, so the flux is |Omega| for any c.
  for (auto id : {DomainId::convex, DomainId::nonconvex}) {
    const Mesh m = refine_uniform(build_domain(id));
    for (auto pairing : {ElementPairing::taylor_hood(), ElementPairing::mini()}) {
      const DofMap d = build_dofmap(m, pairing);
      const auto c = build_corrector(CorrectorKind::affine_field, m, d, Point2{0.3, -0.2});
      EXPECT_NEAR(c.flux, m.polygon().area(), 1e-14);
    }
  }
}

TEST(BoundaryFlux, DeltaOfCounterexampleProjection) {
  const Mesh m = build_unit_square();
  const DofMap d = build_dofmap(m, ElementPairing::mini());
  BoundaryTrace t(4);
  t.x = {1.0 / 32, -5.0 / 32, 19.0 / 32, 1.0 / 32};
  EXPECT_NEAR(compute_delta_h(t, m, d), 3.0 / 16.0, 1e-15);
}

TEST(BoundaryFlux, RejectsWrongSize) {
  const Mesh m = build_unit_square();
  const DofMap d = build_dofmap(m, ElementPairing::mini());
  EXPECT_THROW(boundary_flux(BoundaryTrace(3), m, d), ValidationError);
}

TEST(BorderedSystem, SymmetricAndConsistentSizes) {
  const Mesh m = refine_uniform(build_domain(DomainId::convex));
  for (auto pairing : {ElementPairing::taylor_hood(), ElementPairing::mini()}) {
    const DofMap d = build_dofmap(m, pairing);
    const auto trace = build_corrector(CorrectorKind::affine_field, m, d).w;
    for (double reg : {0.0, 1.0}) {
      const BorderedSystem sys = assemble_bordered_system(m, d, trace, reg);
      const SparseMatrix M = sys.matrix();
      EXPECT_EQ(M.rows(), sys.size());
      EXPECT_EQ(static_cast<int>(sys.rhs().size()), sys.size());
      EXPECT_EQ(sys.n_interior() + 2 * d.n_boundary(), d.n_velocity());
      EXPECT_LT(M.asymmetry(), 1e-14);
      EXPECT_DOUBLE_EQ(M(0, 0), reg);
    }
  }
}

TEST(BorderedSystem, RejectsNegativeRegularization) {
  const Mesh m = build_unit_square();
  const DofMap d = build_dofmap(m, ElementPairing::mini());
  EXPECT_THROW(assemble_bordered_system(m, d, BoundaryTrace(4), -1.0), ValidationError);
}

TEST(ExtendTrace, PlacesValuesOnBoundaryDofsOnly) {
  const Mesh m = refine_uniform(build_unit_square());
  const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
  BoundaryTrace t(d.n_boundary());
  for (int k = 0; k < d.n_boundary(); ++k) t.x[k] = 1.0 + k, t.y[k] = -1.0 - k;
  const auto e = extend_trace(t, d);
  for (int i = 0; i < d.n_velocity_per_component; ++i) {
    if (!d.is_boundary(i)) {
      EXPECT_EQ(e[i], 0.0);
      EXPECT_EQ(e[d.n_velocity_per_component + i], 0.0);
    } else {
      EXPECT_EQ(e[i], 1.0 + d.boundary_index[i]);
    }
  }
}
