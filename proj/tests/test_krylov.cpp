#include <doctest.h>

#include <random>

#include "spinbus/krylov.hpp"
#include "spinbus/ladder.hpp"
#include "support/reference.hpp"

using namespace spinbus;

TEST_CASE("Lanczos on a bus sector agrees with dense diagonalization") {
  const LadderSpec spec{5, 1.0, 0.4, {}};
  const auto h = build_hamiltonian(spec);
  const Basis s0 = Basis::sector(5, 0);
  const auto op = [&](const RVector& in, RVector& out) { h.apply(s0, in, out); };
  const auto r = lanczos_lowest(op, static_cast<Eigen::Index>(s0.size()), h.norm_bound());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(s0));
  REQUIRE(r.values.size() == 2);
  CHECK(r.values[0] == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-12));
  CHECK(r.values[1] == doctest::Approx(es.eigenvalues()[1]).epsilon(1e-12));
  CHECK(r.residuals.maxCoeff() < 1e-9);
  CHECK(std::abs(std::abs(r.vectors.col(0).dot(es.eigenvectors().col(0))) - 1.0) < 1e-10);
}

TEST_CASE("Lanczos in an invariant subspace returns what it holds") {
  // Diagonal operator: the start vector spans a Krylov space of size 3.
  Eigen::VectorXd d(3);
  d << 1.0, -2.0, 4.0;
  const auto op = [&](const RVector& in, RVector& out) { out = d.cwiseProduct(in); };
  LanczosOptions opts;
  opts.wanted = 5;
  const auto r = lanczos_lowest(op, 3, 4.0, opts);
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(-2.0));
  CHECK(r.values[2] == doctest::Approx(4.0));
  CHECK_THROWS_AS(lanczos_lowest(op, 0, 1.0), DomainError);
}

TEST_CASE("projected CG solves the shifted system off the excluded vector") {
  std::mt19937_64 rng(9);
  const int n = 40;
  Eigen::MatrixXcd a = ref::random_vector(n * n, rng).reshaped(n, n);
  a = a * a.adjoint() + Eigen::MatrixXcd::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  // shift so the lowest eigenvector becomes a null direction
  const Eigen::MatrixXcd shifted = a - es.eigenvalues()[0] * Eigen::MatrixXcd::Identity(n, n);
  const CVector psi0 = es.eigenvectors().col(0);
  const CVector b = ref::random_vector(n, rng);
  const auto op = [&](const CVector& in, CVector& out) { out = shifted * in; };
  const auto r = projected_cg(op, b, psi0);

  Eigen::MatrixXcd pinv = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    pinv += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint() / (es.eigenvalues()[k] - es.eigenvalues()[0]);
  }
  CHECK((r.solution - pinv * b).norm() < 1e-10 * (pinv * b).norm());
  CHECK(std::abs(psi0.dot(r.solution)) < 1e-12);
  CHECK(r.relative_residual < 1e-12);

  CgOptions starved;
  starved.max_iterations = 2;
  CHECK_THROWS_AS(projected_cg(op, b, psi0, starved), ConvergenceError);
  CHECK_THROWS_AS(projected_cg(op, b.head(3), psi0), DomainError);
}

TEST_CASE("projected CG refuses an indefinite operator") {
  Eigen::VectorXd d(4);
  d << 0.0, 1.0, -1.0, 2.0;
  CVector e0 = CVector::Zero(4);
  e0[0] = 1;
  const auto op = [&](const CVector& in, CVector& out) { out = d.cast<Complex>().cwiseProduct(in); };
  CVector b = CVector::Zero(4);
  b[2] = 1;
  CHECK_THROWS_AS(projected_cg(op, b, e0), ConvergenceError);
}
