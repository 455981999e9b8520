#include "dstokes/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "dstokes/error.hpp"

namespace dstokes {

using std::cos;
using std::sin;

SingularSolution::SingularSolution(double alpha, double omega) : alpha_(alpha), omega_(omega) {
  if (!(alpha > -1.0)) throw ValidationError("SingularSolution: alpha must exceed -1");
  if (!(omega > 0.0 && omega < 2.0 * std::numbers::pi)) {
    throw ValidationError("SingularSolution: omega must lie in (0, 2 pi)");
  }
}

double SingularSolution::polar_angle(const Point2& x) const {
  constexpr double tol = 1e-10;
  double theta = std::atan2(x.y, x.x);
  if (theta < 0.0) theta = theta > -tol ? 0.0 : theta + 2.0 * std::numbers::pi;
  if (theta > omega_) {
    if (theta <= omega_ + tol) return omega_;
    // Points just below the positive x-axis wrap to ~2 pi.
    if (theta >= 2.0 * std::numbers::pi - tol) return 0.0;
    throw ValidationError("SingularSolution: point outside the sector [0, omega]");
  }
  return theta;
}

double SingularSolution::radius(const Point2& x, double exponent) const {
  const double r = norm(x);
  if (r == 0.0) {
    if (exponent > 0.0) return 0.0;
    throw ValidationError("SingularSolution: evaluation at the singular corner");
  }
  return std::pow(r, exponent);
}

double SingularSolution::phi1(double t) const {
  const double a = alpha_, w = omega_;
  return -sin(a * t) * cos(w) - a * sin(t) * cos(a * (w - t) + t) + a * sin(w - t) * cos(a * t - t) +
         sin(a * (w - t));
}

double SingularSolution::phi2(double t) const {
  const double a = alpha_, w = omega_;
  return -sin(a * t) * sin(w) - a * sin(t) * sin(a * (w - t) + t) - a * sin(w - t) * sin(a * t - t);
}

double SingularSolution::phi_p(double t) const {
  const double a = alpha_, w = omega_;
  return 2.0 * a * (sin((a - 1.0) * t + w) + sin((a - 1.0) * t - a * w));
}

double SingularSolution::dphi1(double t) const {
  const double a = alpha_, w = omega_;
  const double A = a * (w - t) + t;
  const double B = a * t - t;
  return -a * cos(a * t) * cos(w) - a * (cos(t) * cos(A) - (1.0 - a) * sin(t) * sin(A)) +
         a * (-cos(w - t) * cos(B) - (a - 1.0) * sin(w - t) * sin(B)) - a * cos(a * (w - t));
}

double SingularSolution::dphi2(double t) const {
  const double a = alpha_, w = omega_;
  const double A = a * (w - t) + t;
  const double B = a * t - t;
  return -a * cos(a * t) * sin(w) - a * (cos(t) * sin(A) + (1.0 - a) * sin(t) * cos(A)) -
         a * (-cos(w - t) * sin(B) + (a - 1.0) * sin(w - t) * cos(B));
}

Vec2 SingularSolution::velocity(const Point2& x) const {
  const double t = polar_angle(x);
  const double ra = radius(x, alpha_);
  return {ra * phi1(t), ra * phi2(t)};
}

double SingularSolution::pressure(const Point2& x) const {
  const double t = polar_angle(x);
  if (alpha_ == 0.0) return 0.0;
  return radius(x, alpha_ - 1.0) * phi_p(t);
}

Mat2 SingularSolution::velocity_gradient(const Point2& x) const {
  const double t = polar_angle(x);
  const double r1 = radius(x, alpha_ - 1.0);
  const double c = cos(t);
  const double s = sin(t);
  // d/dx = cos t d/dr - sin t / r d/dt, d/dy = sin t d/dr + cos t / r d/dt.
  const double f1 = phi1(t), g1 = dphi1(t);
  const double f2 = phi2(t), g2 = dphi2(t);
  return {{{r1 * (alpha_ * f1 * c - g1 * s), r1 * (alpha_ * f1 * s + g1 * c)},
           {r1 * (alpha_ * f2 * c - g2 * s), r1 * (alpha_ * f2 * s + g2 * c)}}};
}

XiResult solve_xi(double omega) {
  using std::numbers::pi;
  if (!(omega > 0.0 && omega < 2.0 * pi)) throw ValidationError("solve_xi: omega must lie in (0, 2 pi)");
  if (omega <= pi) return {pi / omega, true};

  const double s2 = sin(omega) * sin(omega);
  auto f = [&](double l) {
    const double v = sin(l * omega);
    return v * v - l * l * s2;
  };
  // Scan for the first sign change, then bisect. The root at l = 1 is excluded.
  constexpr int steps = 2000;
  const double lo0 = 0.5;
  const double hi0 = 1.0 - 1e-6;
  double a = lo0;
  double fa = f(a);
  for (int i = 1; i <= steps; ++i) {
    const double b = lo0 + (hi0 - lo0) * i / steps;
    const double fb = f(b);
    if (fa == 0.0) return {a, false};
    if ((fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return {0.5 * (lo + hi), false};
    }
    a = b;
    fa = fb;
  }
  throw NumericalError("solve_xi: no sign change in (1/2, 1)");
}

}  // namespace dstokes
