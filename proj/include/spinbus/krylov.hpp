#pragma once

// Matrix-free Krylov kernels: a Lanczos eigensolver for the low end of a real
// symmetric operator and a projected conjugate-gradient solver for the
// resolvent (H - e0) restricted to the complement of the ground state.

#include <functional>

#include "spinbus/hilbert.hpp"

namespace spinbus {

using RealOperator = std::function<void(const RVector&, RVector&)>;
using ComplexOperator = std::function<void(const CVector&, CVector&)>;

struct LanczosOptions {
  int wanted = 2;            // number of lowest eigenpairs
  double tolerance = 1e-11;  // on ||H v - e v|| relative to the norm bound
  int max_krylov = 600;
  unsigned seed = 20240611u;
};

struct LanczosResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, orthonormal
  Eigen::VectorXd residuals;
  int iterations = 0;
};

/// Lowest eigenpairs with full reorthogonalization. Degenerate eigenvalues
/// are returned once each (a single start vector cannot resolve multiplets).
/// An invariant Krylov space may hold fewer than `wanted` pairs; those are
/// returned. Throws ConvergenceError when a Ritz residual stays above
/// tolerance once the budget is spent.
LanczosResult lanczos_lowest(const RealOperator& op, Eigen::Index dim, double norm_bound,
                             const LanczosOptions& options = {});

struct CgOptions {
  double tolerance = 1e-13;  // relative residual
  int max_iterations = 20000;
};

struct CgResult {
  CVector solution;
  double relative_residual = 0.0;
  int iterations = 0;
};

/// Solves A x = b on the orthogonal complement of `exclude` (unit norm),
/// where A is Hermitian and positive definite there. `b` is projected first
/// and the iterates are kept in the complement.
CgResult projected_cg(const ComplexOperator& op, const CVector& b, const CVector& exclude,
                      const CgOptions& options = {});

}  // namespace spinbus
