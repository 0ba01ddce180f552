#include <doctest.h>

#include <numbers>
#include <random>

#include "spinbus/gates.hpp"
#include "support/reference.hpp"

using namespace spinbus;
using std::numbers::pi;

namespace {

// sigma/2 in the qubit basis (0 = up), written out by hand.
Eigen::Matrix2cd tau(Axis a) {
  const Complex i{0, 1};
  Eigen::Matrix2cd m;
  switch (a) {
    case Axis::x: m << 0, 0.5, 0.5, 0; break;
    case Axis::y: m << 0, -0.5 * i, 0.5 * i, 0; break;
    case Axis::z: m << 0.5, 0, 0, -0.5; break;
  }
  return m;
}

Eigen::MatrixXcd on_a(const Eigen::Matrix2cd& m) { return ref::kron(m, Eigen::Matrix2cd::Identity()); }
Eigen::MatrixXcd on_b(const Eigen::Matrix2cd& m) { return ref::kron(Eigen::Matrix2cd::Identity(), m); }

Eigen::MatrixXcd interaction(double jx, double jz) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
  for (Axis a : kAxes) h += (a == Axis::z ? jz : jx) * ref::kron(tau(a), tau(a));
  return h;
}

double phase_distance(const TwoQubitUnitary& u, const TwoQubitUnitary& v) {
  return ref::phase_scan_distance(u.matrix(), v.matrix());
}

// (gamma_x, gamma_z) from the L=2 closed-form couplings and a few anisotropic
// buses, including a negative gamma_x.
std::vector<std::pair<double, double>> coupling_grid() {
  std::vector<std::pair<double, double>> out;
  for (double d : {0.2, 0.5, 0.8, 1.0}) {
    for (int n : {2, 3}) {
      const auto c = compute_coupling({2, 1.0, d, {}}, {1}, {n}, 0.1, 0.1);
      out.emplace_back(c.gamma_x, c.gamma_z);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("unitary wrapper") {
  CHECK_THROWS_AS(TwoQubitUnitary(2.0 * Matrix4c::Identity()), DomainError);
  const auto r = rotation(Qubit::A, Axis::x, 0.7) * rotation(Qubit::B, Vector3(0.6, 0, 0.8), 1.3);
  CHECK(r.unitarity_error() < 1e-14);
  CHECK(operator_distance(r * r.adjoint(), TwoQubitUnitary::identity()) < 1e-14);
}

TEST_CASE("rotations") {
  for (Axis a : kAxes) {
    const Eigen::MatrixXcd expect = ref::expm_hermitian(on_a(tau(a)), 0.9);
    CHECK((rotation(Qubit::A, a, 0.9).matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(operator_distance(rotation(Qubit::B, a, 0.4) * rotation(Qubit::B, a, -0.4), TwoQubitUnitary::identity()) < 1e-14);
    CHECK((pauli(a) - 2.0 * tau(a)).cwiseAbs().maxCoeff() == 0.0);
  }
  // R^y(pi/2)|0> = (|0> + |1>)/sqrt 2
  const Eigen::Vector2cd up(1, 0);
  const Eigen::Vector2cd out = single_qubit_rotation(Vector3::UnitY(), pi / 2) * up;
  CHECK(std::abs(out[0] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(out[1] - 1 / std::sqrt(2.0)) < 1e-15);

  const Vector3 n = Vector3(1, -1, 1).normalized();
  Eigen::Matrix2cd nt = n.x() * tau(Axis::x) + n.y() * tau(Axis::y) + n.z() * tau(Axis::z);
  const Eigen::MatrixXcd both = ref::expm_hermitian(on_a(nt) + on_b(nt), 1.1);
  CHECK((collective_rotation(n, 1.1).matrix() - both).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(rotation(Qubit::A, Vector3(1, 1, 0), 1.0), DomainError);
}

TEST_CASE("evolution under the effective interaction") {
  for (const auto& [gx, gz] : coupling_grid()) {
    const double ja = 0.1, jb = 0.07;
    for (double t : {0.0, 3.0, 250.0}) {
      const Eigen::MatrixXcd expect = ref::expm_hermitian(interaction(2 * ja * jb * gx, 2 * ja * jb * gz), t);
      CHECK((evolve_effective(gx, gz, ja, jb, t).matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  CHECK(operator_distance(evolve_effective(0.1, 0.2, 1, 1, 0), TwoQubitUnitary::identity()) == 0.0);
  CHECK_THROWS_AS(evolve_effective(0.1, 0.1, 1, 1, -1.0), DomainError);
}

TEST_CASE("timings") {
  CHECK(coupling_time(1.0 / 6, 0.1, 0.1) == doctest::Approx(pi / (4 * 0.01 / 6)));
  CHECK(coupling_time(-1.0 / 6, 0.1, 0.1) == doctest::Approx(pi / (4 * 0.01 / 6)));
  CHECK(swap_time(1.0 / 6, 0.1, 0.1) == doctest::Approx(pi / (2 * 0.01 / 6)));
  CHECK_THROWS_AS(coupling_time(0.0, 0.1, 0.1), DomainError);
  CHECK_THROWS_AS(swap_time(0.1, 0.0, 0.1), DomainError);
}

TEST_CASE("isotropic exchange for t_s is SWAP with phase e^{-i pi/4}") {
  for (double g : {1.0 / 6, -1.0 / 8, 0.0123}) {
    const auto u = swap_gate(g, 0.1, 0.2);
    CHECK(phase_distance(u, canonical_swap()) < 1e-10);
    // the phase is fixed by the sign of the exchange
    const Complex phase = g > 0 ? std::exp(Complex(0, -pi / 4)) : std::exp(Complex(0, pi / 4));
    CHECK((u.matrix() - phase * canonical_swap().matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("echo removes the zz part") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 8; ++trial) {
    const double gx = u(rng), gz = u(rng);
    if (std::abs(gx) < 1e-3) continue;
    const auto a = cpf(gx, gz, 0.1, 0.1);
    const auto b = cpf(gx, 0.0, 0.1, 0.1);
    CHECK(phase_distance(a, b) < 1e-10);
  }
}

TEST_CASE("CPF, CNOT and SWAP over the coupling grid") {
  for (const auto& [gx, gz] : coupling_grid()) {
    for (double ja : {0.05, 0.1}) {
      const auto c = cpf(gx, gz, ja, 0.1);
      CHECK(c.unitarity_error() < 1e-12);
      CHECK(phase_distance(c, canonical_cpf()) < 1e-9);
      CHECK(phase_distance(cnot(gx, gz, ja, 0.1), canonical_cnot()) < 1e-9);
      const auto sched = cpf_schedule(gx, gz, ja, 0.1);
      CHECK(operator_distance(realize(sched, gx, gz, ja, 0.1), c) < 1e-12);
      CHECK(sched.t_c == doctest::Approx(coupling_time(gx, ja, 0.1)));
    }
  }
}

TEST_CASE("the sequence without refocusing is not a CPF") {
  const double gx = 1.0 / 6, gz = 1.0 / 6;
  CHECK(phase_distance(cpf_sequence_unrefocused(gx, gz, 0.1, 0.1), canonical_cpf()) > 0.5);
}

TEST_CASE("distance up to phase") {
  std::mt19937_64 rng(17);
  const auto random_unitary = [&] {
    Eigen::MatrixXcd a = ref::random_vector(16, rng).reshaped(4, 4);
    const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
    return TwoQubitUnitary(Matrix4c(ref::expm_hermitian(h, 1.0)));
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_unitary(), v = random_unitary(), w = random_unitary();
    const double d = distance_up_to_phase(u, v);
    CHECK(std::abs(d - phase_distance(u, v)) < 1e-8);
    CHECK(d <= operator_distance(u, v) + 1e-12);
    CHECK(std::abs(d - distance_up_to_phase(v, u)) < 1e-12);
    CHECK(distance_up_to_phase(u, w) <= d + distance_up_to_phase(v, w) + 1e-12);
    const TwoQubitUnitary rephased(std::exp(Complex(0, 2.1)) * u.matrix());
    CHECK(distance_up_to_phase(u, rephased) < 1e-7);
  }
  CHECK(distance_up_to_phase(canonical_swap(), canonical_swap()) == 0.0);
}

TEST_CASE("single-qubit pulse") {
  const std::array<double, 3> gmm{-0.2, -0.2, -0.25};
  const auto p = single_qubit_pulse(Axis::x, 0.05, 10.0, 0.01, gmm, -2.0);
  CHECK(p.theta == doctest::Approx(0.5));
  CHECK(p.phase == doctest::Approx((-2.0 + 0.25 * 1e-4 * -0.65) * 10.0));
}

TEST_CASE("error formula") {
  CHECK(error_formula(0, 0) == 0.0);
  CHECK(error_formula(0.1, -0.1) == doctest::Approx(2 * std::sin(pi * 0.1 / 8)));
  CHECK(error_formula(0.01, 0.02) == doctest::Approx(2 * std::sin(pi * 0.02 / 8)));
  CHECK(error_formula(4.0, 0.0) == doctest::Approx(2.0));
  CHECK(error_formula(2.0, 0.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("fluctuation error model") {
  const LadderSpec spec{3, 10.0, 0.2, {}};
  const auto zero = gate_error(spec, {1}, {2}, 0.0, 0.0, 0.1, 0.1);
  CHECK(zero.n_formula == 0.0);
  CHECK(zero.n_direct < 1e-12);

  const auto small = gate_error(spec, {1}, {2}, 1e-4, 0.0, 0.1, 0.1);
  const auto large = gate_error(spec, {1}, {2}, 1e-3, 0.0, 0.1, 0.1);
  CHECK(small.n_formula < large.n_formula);
  CHECK(large.n_formula < 1e-3);
  CHECK(small.n_direct <= small.n_direct_raw + 1e-15);
  // n_direct follows the formula to first order
  CHECK(std::abs(large.n_direct - large.n_formula) < 0.05 * large.n_formula);

  const auto base = compute_coupling(spec, {1}, {2}, 0.1, 0.1);
  const auto moved = compute_coupling(apply_fluctuations(spec, {1}, 1e-3, {2}, 0.0), {1}, {2}, 0.1, 0.1);
  CHECK(large.delta_x == doctest::Approx((base.gamma_x - moved.gamma_x) / base.gamma_x));
  CHECK(large.delta_z == doctest::Approx((base.gamma_z - moved.gamma_z) / base.gamma_x));
}

TEST_CASE("adiabatic timescale scales as 1/J_A^2") {
  const LadderSpec spec{2, 1.0, 1.0, {}};
  const auto a = adiabatic_check(spec, {1}, {2}, 0.1, 0.1);
  const auto b = adiabatic_check(spec, {1}, {2}, 0.05, 0.05);
  CHECK(a.scale == doctest::Approx(150.0));
  CHECK(b.scale == doctest::Approx(4 * a.scale));
  CHECK(a.gap == doctest::Approx(1.0));
  CHECK(a.gate_time == doctest::Approx(swap_time(1.0 / 6, 0.1, 0.1)));
  CHECK(a.pass);
  CHECK_FALSE(adiabatic_check(spec, {1}, {2}, 3.0, 3.0).pass);
}
