#include "dstokes/solver.hpp"

#include <umfpack.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dstokes/error.hpp"

namespace dstokes {

namespace {

// Owns the UMFPACK symbolic and numeric objects.
class UmfpackFactorization {
 public:
  // UMFPACK expects compressed columns. Handing it the CSR arrays of M
  // describes M^T, so solves use the transposed system flag.
  explicit UmfpackFactorization(const SparseMatrix& M) : M_(M) {
    umfpack_di_defaults(control_);
    control_[UMFPACK_PRL] = 0;
    control_[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;
    int status = umfpack_di_symbolic(M.rows(), M.cols(), M.row_offsets().data(), M.column_indices().data(),
                                     M.values().data(), &symbolic_, control_, info_);
    if (status != UMFPACK_OK) {
      throw NumericalError("sparse factorization: symbolic analysis failed (status " + std::to_string(status) + ")");
    }
    status = umfpack_di_numeric(M.row_offsets().data(), M.column_indices().data(), M.values().data(), symbolic_,
                                &numeric_, control_, info_);
    if (status == UMFPACK_WARNING_singular_matrix) {
      throw NumericalError("sparse factorization: matrix is singular");
    }
    if (status != UMFPACK_OK) {
      throw NumericalError("sparse factorization: numeric factorization failed (status " + std::to_string(status) +
                           ")");
    }
  }
  ~UmfpackFactorization() {
    if (numeric_) umfpack_di_free_numeric(&numeric_);
    if (symbolic_) umfpack_di_free_symbolic(&symbolic_);
  }
  UmfpackFactorization(const UmfpackFactorization&) = delete;
  UmfpackFactorization& operator=(const UmfpackFactorization&) = delete;

  std::vector<double> solve(std::span<const double> b) {
    std::vector<double> x(b.size(), 0.0);
    const int status = umfpack_di_solve(UMFPACK_At, M_.row_offsets().data(), M_.column_indices().data(),
                                        M_.values().data(), x.data(), b.data(), numeric_, control_, info_);
    if (status != UMFPACK_OK) {
      throw NumericalError("sparse factorization: solve failed (status " + std::to_string(status) + ")");
    }
    return x;
  }

 private:
  const SparseMatrix& M_;
  void* symbolic_ = nullptr;
  void* numeric_ = nullptr;
  double control_[UMFPACK_CONTROL];
  double info_[UMFPACK_INFO];
};

std::vector<double> residual(const SparseMatrix& M, std::span<const double> x, std::span<const double> b) {
  auto r = M.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

std::vector<double> solve_direct(const SparseMatrix& M, std::span<const double> rhs, double tol, int* iterations) {
  UmfpackFactorization lu(M);
  auto x = lu.solve(rhs);
  const double bnorm = norm2(rhs);
  // A few steps of iterative refinement against the assembled matrix.
  for (int step = 0; step < 5; ++step) {
    const auto r = residual(M, x, rhs);
    if (norm2(r) <= tol * bnorm) break;
    const auto d = lu.solve(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += d[i];
    ++*iterations;
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericalError("sparse factorization: non-finite solution");
  }
  return x;
}

// Preconditioned MINRES (Paige & Saunders) with a positive diagonal preconditioner.
std::vector<double> minres(const SparseMatrix& M, std::span<const double> b, std::span<const double> diag, double tol,
                           int max_iterations, int* iterations) {
  const std::size_t n = b.size();
  std::vector<double> x(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) return x;

  auto apply_prec = [&](const std::vector<double>& r) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    return z;
  };
  auto dotp = [](const std::vector<double>& a, const std::vector<double>& c) {
    return std::inner_product(a.begin(), a.end(), c.begin(), 0.0);
  };

  std::vector<double> r1(b.begin(), b.end());
  std::vector<double> y = apply_prec(r1);
  double beta1 = dotp(r1, y);
  if (beta1 <= 0.0) throw NumericalError("minres: preconditioner is not positive definite");
  beta1 = std::sqrt(beta1);

  std::vector<double> r2 = r1;
  std::vector<double> w(n, 0.0), w1(n), w2(n, 0.0), v(n);
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0;

  for (int itn = 1; itn <= max_iterations; ++itn) {
    const double s = 1.0 / beta;
    for (std::size_t i = 0; i < n; ++i) v[i] = s * y[i];
    y = M.multiply(v);
    if (itn >= 2) {
      for (std::size_t i = 0; i < n; ++i) y[i] -= (beta / oldb) * r1[i];
    }
    const double alfa = dotp(v, y);
    for (std::size_t i = 0; i < n; ++i) y[i] -= (alfa / beta) * r2[i];
    r1 = r2;
    r2 = y;
    y = apply_prec(r2);
    oldb = beta;
    beta = std::sqrt(std::max(dotp(r2, y), 0.0));

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::max(std::hypot(gbar, beta), std::numeric_limits<double>::min());
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1 = w2;
    w2 = w;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
      x[i] += phi * w[i];
    }
    *iterations = itn;

    if (phibar <= 0.1 * tol * beta1 || beta == 0.0 || itn % 200 == 0) {
      if (norm2(residual(M, x, b)) <= tol * bnorm) return x;
      if (beta == 0.0) break;
    }
  }
  throw NumericalError("minres: no convergence within " + std::to_string(max_iterations) + " iterations");
}

std::vector<double> default_preconditioner(const SparseMatrix& M) {
  std::vector<double> d(M.rows(), 1.0);
  for (int i = 0; i < M.rows(); ++i) {
    const double a = std::abs(M(i, i));
    if (a > 0.0) d[i] = a;
  }
  return d;
}

std::vector<double> solve_with(const SparseMatrix& M, std::span<const double> rhs, const SolverOptions& options,
                               std::span<const double> precond, LinearSolveReport* report) {
  if (M.rows() != M.cols() || static_cast<int>(rhs.size()) != M.rows()) {
    throw ValidationError("solve_linear: dimension mismatch");
  }
  if (!(options.tol > 0.0)) throw ValidationError("solve_linear: tolerance must be positive");

  LinearSolveReport rep;
  rep.method = options.method;
  rep.rhs_norm = norm2(rhs);
  std::vector<double> x;
  if (rep.rhs_norm == 0.0) {
    x.assign(rhs.size(), 0.0);
  } else if (options.method == SolveMethod::direct_factorization) {
    x = solve_direct(M, rhs, options.tol, &rep.iterations);
  } else {
    x = minres(M, rhs, precond, options.tol, options.max_iterations, &rep.iterations);
  }
  rep.residual_norm = norm2(residual(M, x, rhs));
  if (rep.residual_norm > options.tol * rep.rhs_norm) {
    throw NumericalError("linear solve: relative residual " + std::to_string(rep.residual_norm / rep.rhs_norm) +
                         " above tolerance");
  }
  if (report) *report = rep;
  return x;
}

}  // namespace

std::vector<double> solve_linear(const SparseMatrix& M, std::span<const double> rhs, const SolverOptions& options,
                                 LinearSolveReport* report) {
  std::vector<double> precond;
  if (options.method == SolveMethod::minres_uzawa) precond = default_preconditioner(M);
  return solve_with(M, rhs, options, precond, report);
}

std::pair<DiscreteSolution, LinearSolveReport> solve(const BorderedSystem& system, const SolverOptions& options) {
  const SparseMatrix M = system.matrix();
  const auto rhs = system.rhs();

  std::vector<double> precond;
  if (options.method == SolveMethod::minres_uzawa) {
    // Block diagonal: diag(A) on velocities, lumped pressure mass on p, and
    // |Omega| (the border's Schur complement scale) for delta.
    precond.resize(system.size());
    const double total = std::accumulate(system.s.begin(), system.s.end(), 0.0);
    precond[0] = system.alpha_reg > 0.0 ? std::max(system.alpha_reg, total) : total;
    for (int i = 0; i < system.n_interior(); ++i) precond[1 + i] = system.A(i, i);
    for (int i = 0; i < system.n_pressure; ++i) precond[1 + system.n_interior() + i] = system.s[i];
  }

  LinearSolveReport report;
  const auto x = solve_with(M, rhs, options, precond, &report);

  DiscreteSolution sol;
  sol.delta_h = x[0];
  sol.velocity = system.extension;
  for (int i = 0; i < system.n_interior(); ++i) sol.velocity[system.interior_dofs[i]] = x[1 + i];
  sol.pressure.assign(x.begin() + 1 + system.n_interior(), x.end());
  return {std::move(sol), report};
}

}  // namespace dstokes
