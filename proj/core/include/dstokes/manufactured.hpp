#pragma once

#include "dstokes/geometry.hpp"

namespace dstokes {

/// Corner-singular exact solution of the homogeneous Stokes equations
/// -lap y + grad p = 0, div y = 0 in the sector 0 <= theta <= omega:
///
///   y = r^alpha (Phi1(theta), Phi2(theta)),  p = r^(alpha-1) Phi_p(theta).
///
/// y lies in H^(t+1/2) and p in H^(t-1/2) for t < 1/2 + alpha.
class SingularSolution {
 public:
  /// Throws ValidationError unless alpha > -1 and 0 < omega < 2 pi.
  SingularSolution(double alpha, double omega);

  double alpha() const { return alpha_; }
  double omega() const { return omega_; }

  /// Polar angle mapped into [0, omega]; throws for points outside the sector.
  double polar_angle(const Point2& x) const;

  Vec2 velocity(const Point2& x) const;
  double pressure(const Point2& x) const;
  /// J[i][j] = d y_i / d x_j.
  Mat2 velocity_gradient(const Point2& x) const;

  double phi1(double theta) const;
  double phi2(double theta) const;
  double phi_p(double theta) const;
  double dphi1(double theta) const;
  double dphi2(double theta) const;

 private:
  double radius(const Point2& x, double exponent) const;

  double alpha_;
  double omega_;
};

struct XiResult {
  double value = 0.0;
  /// omega <= pi: no root in (1/2, 1); value is then the lower bound pi/omega > 1.
  bool convex = false;
};

/// Smallest root in (1/2, 1) of sin^2(l omega) - l^2 sin^2(omega), the leading
/// corner singularity exponent for a re-entrant corner, by bisection to 1e-12.
/// Throws NumericalError when no sign change exists in (1/2, 1).
XiResult solve_xi(double omega);

}  // namespace dstokes
