#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dstokes/assembly.hpp"
#include "dstokes/boundary_data.hpp"
#include "dstokes/error.hpp"
#include "dstokes/errors.hpp"
#include "dstokes/solver.hpp"

using namespace dstokes;

namespace {

constexpr double kPi = std::numbers::pi;

Mesh refined(DomainId id, int levels) {
  Mesh m = build_domain(id);
  for (int i = 0; i < levels; ++i) m = refine_uniform(m);
  return m;
}

DiscreteSolution solve_exact_trace(const Mesh& m, const DofMap& d, const SingularSolution& s) {
  const auto u = BoundaryDatum::from_field(m.polygon(), [&](const Point2& x) { return s.velocity(x); },
                                           0.5 + s.alpha(), true);
  return solve(assemble_bordered_system(m, d, project_l2(u, m, d), 1.0), {}).first;
}

}  // namespace

TEST(Eoc, Values) {
  EXPECT_NEAR(eoc(0.04, 0.01), 2.0, 1e-15);
  // Tabulated errors are rounded to 4 digits, so the rate only matches to about 2e-4.
  EXPECT_NEAR(eoc(0.5429, 0.3887), 0.4818, 5e-4);
  EXPECT_EQ(eoc(0.3, 0.3), 0.0);
  EXPECT_NEAR(eoc(7.0 * 0.3, 7.0 * 0.011), eoc(0.3, 0.011), 1e-14);
}

TEST(Eoc, RejectsNonPositive) {
  EXPECT_THROW(eoc(0.0, 0.1), ValidationError);
  EXPECT_THROW(eoc(0.1, -1.0), ValidationError);
}

TEST(ExpectedOrder, ConvexAndReentrant) {
  EXPECT_NEAR(expected_order(0.5, 2 * kPi / 3, 2), 1.5, 1e-15);
  EXPECT_NEAR(expected_order(0.1, 2 * kPi / 3, 2), 1.1, 1e-15);
  EXPECT_NEAR(expected_order(-0.499, 2 * kPi / 3, 2), 0.501, 1e-15);
  // xi(3 pi / 2) - 0.499.
  EXPECT_NEAR(expected_order(-0.499, 1.5 * kPi, 2), 0.0455, 1e-4);
  EXPECT_NEAR(expected_order(0.5, 1.5 * kPi, 2), 1.0445, 1e-4);
  // The velocity order caps the smoothness term.
  EXPECT_NEAR(expected_order(3.0, 2 * kPi / 3, 1), 2.0, 1e-15);
}

TEST(L2VelocityError, ZeroForFieldsInTheSpace) {
  const Mesh m = refined(DomainId::nonconvex, 2);
  {
    const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
    const VelocityField f = [](const Point2& x) { return Vec2{x.x * x.x - x.y, 3 * x.x * x.y + 1}; };
    const DiscreteSolution s{interpolate_velocity(f, m, d), std::vector<double>(d.n_pressure), 0.0};
    EXPECT_LT(l2_velocity_error(s, f, m, d), 1e-12);
    const GradientField g = [](const Point2& x) { return Mat2{{{2 * x.x, -1.0}, {3 * x.y, 3 * x.x}}}; };
    EXPECT_LT(h1_seminorm_velocity_error(s, g, m, d), 1e-12);
  }
  {
    const DofMap d = build_dofmap(m, ElementPairing::mini());
    const VelocityField f = [](const Point2& x) { return Vec2{x.x - 2 * x.y, 0.5}; };
    const DiscreteSolution s{interpolate_velocity(f, m, d), std::vector<double>(d.n_pressure), 0.0};
    EXPECT_LT(l2_velocity_error(s, f, m, d), 1e-12);
  }
}

TEST(L2PressureError, ZeroForLinearAndShiftInvariant) {
  const Mesh m = refined(DomainId::convex, 2);
  const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
  const ScalarField p = [](const Point2& x) { return 2 * x.x - x.y + 0.7; };
  DiscreteSolution s{std::vector<double>(d.n_velocity()), interpolate_pressure(p, m, d), 0.0};
  EXPECT_LT(l2_pressure_error(s, p, m, d), 1e-12);
  const ScalarField q = [](const Point2& x) { return x.x * x.y; };
  const double e = l2_pressure_error(s, q, m, d);
  for (double& v : s.pressure) v += 3.0;
  EXPECT_NEAR(l2_pressure_error(s, q, m, d), e, 1e-12);
}

TEST(SingularErrors, RequirePositiveAlpha) {
  const Mesh m = refined(DomainId::convex, 1);
  const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
  const DiscreteSolution s{std::vector<double>(d.n_velocity()), std::vector<double>(d.n_pressure), 0.0};
  const SingularSolution neg(-0.1, m.polygon().corner_angle);
  EXPECT_THROW(h1_seminorm_velocity_error(s, neg, m, d), ValidationError);
  EXPECT_THROW(l2_pressure_error(s, neg, m, d), ValidationError);
  EXPECT_THROW(l2_pressure_error(s, SingularSolution(0.0, m.polygon().corner_angle), m, d), ValidationError);
  EXPECT_GT(l2_velocity_error(s, neg, m, d), 0.0);
}

TEST(SingularErrors, QuadratureDegreeConverged) {
  for (auto id : {DomainId::convex, DomainId::nonconvex}) {
    const Mesh m = refined(id, 4);
    const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
    const SingularSolution s(0.5, m.polygon().corner_angle);
    const auto sol = solve_exact_trace(m, d, s);
    ErrorQuadrature q10, q14;
    q14.degree = 14;
    const double e10 = l2_velocity_error(sol, s, m, d, q10);
    const double e14 = l2_velocity_error(sol, s, m, d, q14);
    EXPECT_LT(std::abs(e10 - e14), 1e-3 * e14);
  }
}

TEST(SingularErrors, CornerDepthConverged) {
  for (auto id : {DomainId::convex, DomainId::nonconvex}) {
    const Mesh m = refined(id, 3);
    const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
    for (double a : {0.5, 0.1, -0.1, -0.499}) {
      const SingularSolution s(a, m.polygon().corner_angle);
      const auto sol = solve_exact_trace(m, d, s);
      ErrorQuadrature q6, q8;
      q8.corner_depth = 8;
      const double e6 = l2_velocity_error(sol, s, m, d, q6);
      const double e8 = l2_velocity_error(sol, s, m, d, q8);
      EXPECT_LT(std::abs(e6 - e8), 5e-3 * e8) << "alpha=" << a;
    }
  }
}

TEST(SingularErrors, TriangleInequalityWithInterpolant) {
  const Mesh m = refined(DomainId::nonconvex, 3);
  const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
  const SingularSolution s(0.1, m.polygon().corner_angle);
  const auto sol = solve_exact_trace(m, d, s);
  // Nodal interpolation needs the corner value: r^alpha vanishes there for alpha > 0.
  const VelocityField f = [&](const Point2& x) { return norm(x) == 0.0 ? Vec2{} : s.velocity(x); };
  const DiscreteSolution ih{interpolate_velocity(f, m, d), sol.pressure, 0.0};
  DiscreteSolution diff = sol;
  for (std::size_t i = 0; i < diff.velocity.size(); ++i) diff.velocity[i] -= ih.velocity[i];
  const VelocityField zero = [](const Point2&) { return Vec2{}; };
  const double lhs = l2_velocity_error(sol, s, m, d);
  const double rhs = l2_velocity_error(ih, s, m, d) + l2_velocity_error(diff, zero, m, d);
  EXPECT_LE(lhs, rhs * (1 + 1e-12));
}

TEST(SingularErrors, H1ErrorDecreasesUnderRefinement) {
  Mesh m = refined(DomainId::convex, 1);
  double prev = INFINITY;
  for (int l = 0; l < 3; ++l) {
    const DofMap d = build_dofmap(m, ElementPairing::taylor_hood());
    const SingularSolution s(0.5, m.polygon().corner_angle);
    const double e = h1_seminorm_velocity_error(solve_exact_trace(m, d, s), s, m, d);
    EXPECT_LT(e, prev);
    prev = e;
    m = refine_uniform(m);
  }
}
