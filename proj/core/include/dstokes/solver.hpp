#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dstokes/assembly.hpp"
#include "dstokes/sparse.hpp"

namespace dstokes {

enum class SolveMethod { direct_factorization, minres_uzawa };

struct SolverOptions {
  double tol = 1e-10;
  SolveMethod method = SolveMethod::direct_factorization;
  int max_iterations = 20000;
};

struct LinearSolveReport {
  /// ||rhs - M x||_2 recomputed from the assembled matrix.
  double residual_norm = 0.0;
  double rhs_norm = 0.0;
  SolveMethod method = SolveMethod::direct_factorization;
  int iterations = 0;
};

/// Solves a general square sparse system M x = rhs.
///
/// direct_factorization: LU with partial pivoting and a fill-reducing
/// ordering (UMFPACK), followed by iterative refinement until the relative
/// residual reaches `tol`. minres_uzawa: MINRES for symmetric systems with a
/// positive diagonal preconditioner. Throws NumericalError on structural or
/// numerical singularity, or when `tol` is not reached.
std::vector<double> solve_linear(const SparseMatrix& M, std::span<const double> rhs, const SolverOptions& options,
                                 LinearSolveReport* report = nullptr);

/// Solves the bordered Stokes system and unpacks (y_h, p_h, delta_h); boundary
/// velocity dofs are filled with the prescribed trace.
std::pair<DiscreteSolution, LinearSolveReport> solve(const BorderedSystem& system,
                                                     const SolverOptions& options = {});

}  // namespace dstokes
