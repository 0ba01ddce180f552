#include "spinbus/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace spinbus {

LanczosResult lanczos_lowest(const RealOperator& op, Eigen::Index dim, double norm_bound,
                             const LanczosOptions& options) {
  if (dim <= 0) throw DomainError("lanczos: empty space");
  const int wanted = static_cast<int>(std::min<Eigen::Index>(options.wanted, dim));
  const int max_krylov = static_cast<int>(std::min<Eigen::Index>(options.max_krylov, dim));
  const double scale = std::max(norm_bound, 1.0);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  RVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();

  Eigen::MatrixXd basis(dim, max_krylov);
  std::vector<double> alpha;
  std::vector<double> beta;
  RVector w(dim);

  LanczosResult result;
  double worst = INFINITY;
  for (int k = 0; k < max_krylov; ++k) {
    basis.col(k) = v;
    op(v, w);
    const double a = v.dot(w);
    alpha.push_back(a);
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      const RVector coeff = basis.leftCols(k + 1).transpose() * w;
      w.noalias() -= basis.leftCols(k + 1) * coeff;
    }
    const double b = w.norm();

    const int m = k + 1;
    const bool exhausted = (b <= 1e-13 * scale) || m == max_krylov;
    if ((m >= wanted && m % 5 == 0) || exhausted) {
      const int got = std::min(wanted, m);
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
      worst = 0.0;
      for (int j = 0; j < got; ++j) worst = std::max(worst, std::abs(b * tri.eigenvectors()(m - 1, j)));
      if (worst <= options.tolerance * scale || exhausted) {
        result.values = tri.eigenvalues().head(got);
        result.vectors = basis.leftCols(m) * tri.eigenvectors().leftCols(got);
        result.iterations = m;
        break;
      }
    }
    beta.push_back(b);
    v = w / b;
  }
  if (result.iterations == 0) {
    throw ConvergenceError("lanczos: no convergence within the Krylov budget", worst);
  }

  const auto got = result.values.size();
  result.residuals.resize(got);
  RVector hv(dim);
  double max_res = 0.0;
  for (Eigen::Index j = 0; j < got; ++j) {
    RVector x = result.vectors.col(j);
    x.normalize();
    result.vectors.col(j) = x;
    op(x, hv);
    result.residuals[j] = (hv - result.values[j] * x).norm();
    max_res = std::max(max_res, result.residuals[j]);
  }
  if (max_res > 100.0 * options.tolerance * scale) {
    throw ConvergenceError("lanczos: Ritz residual above tolerance", max_res);
  }
  return result;
}

CgResult projected_cg(const ComplexOperator& op, const CVector& b, const CVector& exclude,
                      const CgOptions& options) {
  if (b.size() != exclude.size()) throw DomainError("projected_cg: size mismatch");
  const auto project = [&](CVector& x) { x -= exclude * exclude.dot(x); };

  CVector rhs = b;
  project(rhs);
  CgResult result;
  result.solution = CVector::Zero(b.size());
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return result;

  CVector r = rhs;
  CVector p = r;
  CVector ap(b.size());
  double rr = r.squaredNorm();
  for (int it = 1; it <= options.max_iterations; ++it) {
    op(p, ap);
    project(ap);
    const Complex pap = p.dot(ap);
    if (pap.real() <= 0.0) {
      throw ConvergenceError("projected_cg: operator not positive on the complement", std::sqrt(rr) / rhs_norm);
    }
    const double step = rr / pap.real();
    result.solution += step * p;
    r -= step * ap;
    const double rr_next = r.squaredNorm();
    result.iterations = it;
    result.relative_residual = std::sqrt(rr_next) / rhs_norm;
    if (result.relative_residual <= options.tolerance) break;
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  project(result.solution);
  // Report the true residual rather than the recurrence estimate.
  op(result.solution, ap);
  project(ap);
  result.relative_residual = (rhs - ap).norm() / rhs_norm;
  if (result.relative_residual > 1e3 * options.tolerance) {
    throw ConvergenceError("projected_cg: residual above tolerance", result.relative_residual);
  }
  return result;
}

}  // namespace spinbus
