#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dstokes/assembly.hpp"
#include "dstokes/fe_spaces.hpp"
#include "dstokes/manufactured.hpp"
#include "dstokes/mesh.hpp"

namespace dstokes {

using VelocityField = std::function<Vec2(const Point2&)>;
using GradientField = std::function<Mat2(const Point2&)>;
using ScalarField = std::function<double(const Point2&)>;

/// Quadrature used for error norms. Elements with the singular corner as a
/// vertex are split dyadically `corner_depth` times toward it; the innermost
/// piece uses a collapsed rule centred on the corner.
struct ErrorQuadrature {
  int degree = 10;
  int corner_depth = 6;
  bool singular_corner = true;
};

/// ||y - y_h||_{L2}.
double l2_velocity_error(const DiscreteSolution& sol, const VelocityField& exact, const Mesh& mesh,
                         const DofMap& dofs, const ErrorQuadrature& quad = {});
double l2_velocity_error(const DiscreteSolution& sol, const SingularSolution& exact, const Mesh& mesh,
                         const DofMap& dofs, const ErrorQuadrature& quad = {});

/// |y - y_h|_{H1}. The SingularSolution overload requires alpha > 0.
double h1_seminorm_velocity_error(const DiscreteSolution& sol, const GradientField& exact, const Mesh& mesh,
                                  const DofMap& dofs, const ErrorQuadrature& quad = {});
double h1_seminorm_velocity_error(const DiscreteSolution& sol, const SingularSolution& exact, const Mesh& mesh,
                                  const DofMap& dofs, const ErrorQuadrature& quad = {});

/// ||(p - mean p) - (p_h - mean p_h)||_{L2}. The SingularSolution overload requires alpha > 0.
double l2_pressure_error(const DiscreteSolution& sol, const ScalarField& exact, const Mesh& mesh, const DofMap& dofs,
                         const ErrorQuadrature& quad = {});
double l2_pressure_error(const DiscreteSolution& sol, const SingularSolution& exact, const Mesh& mesh,
                         const DofMap& dofs, const ErrorQuadrature& quad = {});

/// log2(e_coarse / e_fine); throws ValidationError for non-positive input.
double eoc(double e_coarse, double e_fine);

/// s + min(t - 1/2, k) with t = 1/2 + alpha, s = 1 for omega < pi and
/// s = xi(omega) otherwise.
double expected_order(double alpha, double omega, int k);

/// Nodal interpolant of a velocity field. For MINI the bubble coefficient
/// matches the field at the element centroid.
std::vector<double> interpolate_velocity(const VelocityField& field, const Mesh& mesh, const DofMap& dofs);
std::vector<double> interpolate_pressure(const ScalarField& field, const Mesh& mesh, const DofMap& dofs);

/// (div y_h, 1) over the domain.
double divergence_integral(const std::vector<double>& velocity, const Mesh& mesh, const DofMap& dofs);

/// Max-norm residual of the discrete equations for a computed solution:
/// (grad y_h, grad v) - (div v, p_h) on interior test functions and
/// (div y_h, q) - delta_h (1, q) on all pressure test functions.
double galerkin_residual(const DiscreteSolution& sol, const Mesh& mesh, const DofMap& dofs);

/// (p_h, 1).
double pressure_mean_integral(const DiscreteSolution& sol, const Mesh& mesh, const DofMap& dofs);

}  // namespace dstokes
