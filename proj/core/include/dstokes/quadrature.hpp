#pragma once

#include <vector>

#include "dstokes/geometry.hpp"

namespace dstokes {

/// Quadrature rule on the reference triangle (0,0), (1,0), (0,1).
///
/// Points are barycentric coordinates; weights sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<Barycentric> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Gauss rule on [0, 1] with n points (exact up to degree 2n - 1).
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule1D gauss_legendre(int n);

/// Positive interior rule exact for all bivariate polynomials of total degree
/// `degree`, 1 <= degree <= 20. Degrees up to 5 use fully symmetric rules;
/// higher degrees use a collapsed Gauss product rule.
QuadratureRule triangle_quadrature(int degree);

/// Collapsed (Duffy) Gauss product rule whose collapse point is barycentric
/// vertex 0. The Jacobian factor vanishes linearly at that vertex, so the rule
/// stays accurate for integrands behaving like r^a, a > -2, near vertex 0.
QuadratureRule collapsed_quadrature(int degree);

}  // namespace dstokes
