#include "dstokes/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dstokes/error.hpp"

namespace dstokes {

GaussRule1D gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: need at least one point");
  GaussRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess; nodes are
  // mapped from [-1, 1] to [0, 1] at the end.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

namespace {

void add_orbit3(QuadratureRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({b, a, a});
  r.points.push_back({a, b, a});
  r.points.push_back({a, a, b});
  r.weights.insert(r.weights.end(), 3, w);
}

}  // namespace

QuadratureRule collapsed_quadrature(int degree) {
  if (degree < 1 || degree > 40) throw ValidationError("collapsed_quadrature: unsupported degree");
  // The radial direction carries the extra Jacobian factor u.
  const int n = (degree + 2) / 2 + 1;
  const GaussRule1D g = gauss_legendre(n);
  QuadratureRule r;
  r.degree = degree;
  for (int i = 0; i < n; ++i) {
    const double u = g.nodes[i];
    for (int j = 0; j < n; ++j) {
      const double v = g.nodes[j];
      r.points.push_back({1.0 - u, u * (1.0 - v), u * v});
      r.weights.push_back(g.weights[i] * g.weights[j] * u);
    }
  }
  return r;
}

QuadratureRule triangle_quadrature(int degree) {
  if (degree < 1 || degree > 20) {
    throw ValidationError("triangle_quadrature: unsupported degree " + std::to_string(degree));
  }
  QuadratureRule r;
  r.degree = degree;
  switch (degree) {
    case 1:
      r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      r.weights = {0.5};
      return r;
    case 2:
      add_orbit3(r, 1.0 / 6.0, 1.0 / 6.0);
      return r;
    case 3:
    case 4:
      // Six-point rule (Strang-Fix / Dunavant), exact to degree 4.
      add_orbit3(r, 0.44594849091596488632, 0.5 * 0.22338158967801146570);
      add_orbit3(r, 0.09157621350977074346, 0.5 * 0.10995174365532186764);
      return r;
    case 5: {
      const double s15 = std::sqrt(15.0);
      r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      r.weights = {9.0 / 80.0};
      add_orbit3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 2400.0);
      add_orbit3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 2400.0);
      return r;
    }
    default: {
      QuadratureRule c = collapsed_quadrature(degree);
      return c;
    }
  }
}

}  // namespace dstokes
