#pragma once

#include <vector>

#include "dstokes/fe_spaces.hpp"
#include "dstokes/mesh.hpp"
#include "dstokes/sparse.hpp"
#include "dstokes/trace.hpp"

namespace dstokes {

/// Vector Laplacian (grad u, grad v) over all velocity dofs, 2n x 2n and
/// block diagonal in the components.
SparseMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofs);

/// Divergence pairing D_ij = (div phi_j, q_i) over the full nodal P1 pressure
/// basis, n_pressure x 2n.
SparseMatrix assemble_divergence(const Mesh& mesh, const DofMap& dofs);

/// L2(boundary) Gram matrix of the scalar trace basis, n_boundary x n_boundary.
/// Applies to each velocity component separately.
SparseMatrix assemble_boundary_mass(const Mesh& mesh, const DofMap& dofs);

/// Integrals (q_i, 1) of the pressure basis functions.
std::vector<double> pressure_integrals(const Mesh& mesh, const DofMap& dofs);

/// Integrals <1, phi_i> of the scalar trace basis functions over the boundary.
std::vector<double> trace_basis_integrals(const Mesh& mesh, const DofMap& dofs);

/// Net flux <u_h, n> over the boundary, integrated exactly edge by edge.
double boundary_flux(const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs);

/// Divergence defect |Omega|^-1 <u_h, n>.
double compute_delta_h(const BoundaryTrace& trace, const Mesh& mesh, const DofMap& dofs);

/// Discrete extension E_h u_h: full velocity vector with the trace on boundary
/// dofs and zeros inside.
std::vector<double> extend_trace(const BoundaryTrace& trace, const DofMap& dofs);

/// The bordered saddle-point system
///
///   [ alpha_reg  0    s^T ] [ delta ]   [ delta_target ]
///   [ 0          A    B^T ] [ y0    ] = [ rhs_f        ]
///   [ s          B    0   ] [ p     ]   [ rhs_g        ]
///
/// for the homogenized velocity y0 on interior dofs. A is the interior block
/// of the stiffness matrix, B = -D restricted to interior velocity columns,
/// s_i = (q_i, 1), rhs_f = -(A E_h u_h) on interior rows and
/// rhs_g = D E_h u_h. With alpha_reg = 0 the upper-left block is singular and
/// the system is a pure saddle-point problem.
struct BorderedSystem {
  SparseMatrix A;
  SparseMatrix B;
  std::vector<double> s;
  double alpha_reg = 1.0;
  std::vector<double> rhs_f;
  std::vector<double> rhs_g;
  double delta_target = 0.0;

  /// Interior velocity index -> full velocity index (component-major).
  std::vector<int> interior_dofs;
  /// E_h u_h over all velocity dofs.
  std::vector<double> extension;
  BoundaryTrace trace;
  int n_pressure = 0;

  int n_interior() const { return static_cast<int>(interior_dofs.size()); }
  int size() const { return 1 + n_interior() + n_pressure; }

  /// Assembled full symmetric matrix; unknown ordering (delta, y0, p).
  SparseMatrix matrix() const;
  std::vector<double> rhs() const;
};

BorderedSystem assemble_bordered_system(const Mesh& mesh, const DofMap& dofs, const BoundaryTrace& trace,
                                        double alpha_reg = 1.0);

/// Computed (y_h, p_h, delta_h).
struct DiscreteSolution {
  std::vector<double> velocity;  // all velocity dofs, component-major
  std::vector<double> pressure;  // nodal P1 pressure
  double delta_h = 0.0;
};

/// delta recovered algebraically as e^T (g - B y0) / e^T s.
double recover_delta(const BorderedSystem& system, const std::vector<double>& y0);

}  // namespace dstokes
