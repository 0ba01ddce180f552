#pragma once

// Independent dense references built from Kronecker products of 2x2 spin
// matrices. Nothing here goes through the library's bit-level kernels, so the
// tests compare two separate constructions.
//
// Site b is the b-th factor counted from the right (bit b of the index), with
// local index 1 = spin up.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "spinbus/hilbert.hpp"

namespace ref {

using Mat = Eigen::MatrixXcd;
using C = std::complex<double>;

inline Eigen::Matrix2cd spin(spinbus::Axis a) {
  Eigen::Matrix2cd m;
  const C i{0, 1};
  switch (a) {
    case spinbus::Axis::x: m << 0, 0.5, 0.5, 0; break;
    case spinbus::Axis::y: m << 0, 0.5 * i, -0.5 * i, 0; break;  // <down|s^y|up> = i/2
    case spinbus::Axis::z: m << -0.5, 0, 0, 0.5; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Single-site operator on `sites` spins, acting on bit `bit`.
inline Mat site_op(int sites, int bit, const Eigen::Matrix2cd& op) {
  Mat out = Mat::Identity(1, 1);
  for (int b = sites - 1; b >= 0; --b) out = kron(out, b == bit ? Mat(op) : Mat(Mat::Identity(2, 2)));
  return out;
}

inline int bit_of(int chain, int rung, int L) { return (chain - 1) * L + (rung - 1); }

/// Bus Hamiltonian from its definition, with optional per-bond anisotropy.
template <typename DeltaFn>
Mat ladder(int L, double J, DeltaFn delta_of_bond) {
  const int N = 2 * L;
  Mat h = Mat::Zero(Eigen::Index{1} << N, Eigen::Index{1} << N);
  const auto pair = [&](int a, int b, double wx, double wz) {
    for (auto ax : spinbus::kAxes) {
      const double w = ax == spinbus::Axis::z ? wz : wx;
      h += w * site_op(N, a, spin(ax)) * site_op(N, b, spin(ax));
    }
  };
  for (int c = 1; c <= 2; ++c)
    for (int j = 1; j < L; ++j) pair(bit_of(c, j, L), bit_of(c, j + 1, L), J, J * delta_of_bond(c, j));
  for (int j = 1; j <= L; ++j) pair(bit_of(1, j, L), bit_of(2, j, L), J, J);
  return h;
}

inline Mat ladder(int L, double J, double delta) {
  return ladder(L, J, [delta](int, int) { return delta; });
}

/// gamma^{ab}_{mn} = -<0| s_m^a R s_n^b |0> with R the reduced resolvent, from a
/// dense eigendecomposition.
inline C gamma(const Mat& h, int sites, int bit_m, int bit_n, spinbus::Axis a, spinbus::Axis b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const auto& e = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  Mat r = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 1; k < e.size(); ++k) r += v.col(k) * v.col(k).adjoint() / (e[k] - e[0]);
  const Eigen::VectorXcd psi = v.col(0);
  const Mat sm = site_op(sites, bit_m, spin(a));
  const Mat sn = site_op(sites, bit_n, spin(b));
  return -psi.dot(sm * r * sn * psi);
}

inline Eigen::VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (auto& x : v) x = C(g(rng), g(rng));
  return v;
}

/// exp(-i t H) for a Hermitian matrix.
inline Mat expm_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXcd phase(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phase.size(); ++k) phase[k] = std::exp(C(0, -t * es.eigenvalues()[k]));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

/// min over phi of ||U - e^{i phi} V||_2 by a fine phase scan plus golden refinement.
inline double phase_scan_distance(const Mat& u, const Mat& v) {
  const auto at = [&](double phi) {
    Eigen::JacobiSVD<Mat> svd(u - std::exp(C(0, phi)) * v);
    return svd.singularValues()[0];
  };
  const double two_pi = 6.283185307179586;
  double best_phi = 0, best = at(0);
  const int samples = 2000;
  for (int k = 1; k < samples; ++k) {
    const double phi = two_pi * k / samples;
    if (const double d = at(phi); d < best) best = d, best_phi = phi;
  }
  double lo = best_phi - two_pi / samples, hi = best_phi + two_pi / samples;
  for (int it = 0; it < 100; ++it) {
    const double a = lo + (hi - lo) * 0.381966, b = hi - (hi - lo) * 0.381966;
    if (at(a) < at(b)) hi = b;
    else lo = a;
  }
  return std::min(best, at(0.5 * (lo + hi)));
}

}  // namespace ref
