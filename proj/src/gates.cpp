#include "spinbus/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace spinbus {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Matrix4c on_qubit(Qubit q, const Matrix2c& u) {
  Matrix4c out = Matrix4c::Zero();
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c& a = q == Qubit::A ? u : id;
  const Matrix2c& b = q == Qubit::A ? id : u;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Vector3 n1() { return Vector3(1.0, -1.0, 1.0) / std::sqrt(3.0); }
Vector3 n2() { return Vector3(1.0, 1.0, -1.0) / std::sqrt(3.0); }

}  // namespace

TwoQubitUnitary::TwoQubitUnitary(const Matrix4c& m, double tolerance) : m_(m) {
  if (unitarity_error() > tolerance) {
    throw DomainError("matrix is not unitary (error " + std::to_string(unitarity_error()) + ")");
  }
}

TwoQubitUnitary TwoQubitUnitary::identity() { return TwoQubitUnitary(Matrix4c::Identity(), Unchecked{}); }

TwoQubitUnitary TwoQubitUnitary::adjoint() const { return TwoQubitUnitary(m_.adjoint(), Unchecked{}); }

double TwoQubitUnitary::unitarity_error() const {
  return (m_.adjoint() * m_ - Matrix4c::Identity()).cwiseAbs().maxCoeff();
}

TwoQubitUnitary operator*(const TwoQubitUnitary& a, const TwoQubitUnitary& b) {
  return TwoQubitUnitary(a.m_ * b.m_, TwoQubitUnitary::Unchecked{});
}

double operator_distance(const TwoQubitUnitary& u, const TwoQubitUnitary& v) {
  Eigen::JacobiSVD<Matrix4c> svd(u.matrix() - v.matrix());
  return svd.singularValues()[0];
}

double distance_up_to_phase(const TwoQubitUnitary& u, const TwoQubitUnitary& v) {
  Eigen::ComplexEigenSolver<Matrix4c> solver(v.matrix().adjoint() * u.matrix());
  std::array<double, 4> phases{};
  for (int i = 0; i < 4; ++i) phases[static_cast<std::size_t>(i)] = std::arg(solver.eigenvalues()[i]);
  std::sort(phases.begin(), phases.end());
  double largest_gap = phases[0] + 2.0 * kPi - phases[3];
  for (std::size_t i = 0; i + 1 < phases.size(); ++i) largest_gap = std::max(largest_gap, phases[i + 1] - phases[i]);
  const double arc = 2.0 * kPi - largest_gap;
  return 2.0 * std::sin(0.25 * arc);
}

Matrix2c pauli(Axis a) {
  Matrix2c p;
  switch (a) {
    case Axis::x: p << 0, 1, 1, 0; break;
    case Axis::y: p << 0, -kI, kI, 0; break;
    case Axis::z: p << 1, 0, 0, -1; break;
  }
  return p;
}

Matrix2c single_qubit_rotation(const Vector3& n, double theta) {
  const Matrix2c generator = n.x() * pauli(Axis::x) + n.y() * pauli(Axis::y) + n.z() * pauli(Axis::z);
  return std::cos(0.5 * theta) * Matrix2c::Identity() - kI * std::sin(0.5 * theta) * generator;
}

namespace {

void require_unit(const Vector3& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw DomainError("rotation axis must be a unit vector");
}

Vector3 unit(Axis a) {
  switch (a) {
    case Axis::x: return Vector3::UnitX();
    case Axis::y: return Vector3::UnitY();
    case Axis::z: return Vector3::UnitZ();
  }
  return Vector3::UnitZ();
}

}  // namespace

TwoQubitUnitary rotation(Qubit q, const Vector3& axis, double theta) {
  require_unit(axis);
  return TwoQubitUnitary(on_qubit(q, single_qubit_rotation(axis, theta)));
}

TwoQubitUnitary rotation(Qubit q, Axis axis, double theta) { return rotation(q, unit(axis), theta); }

TwoQubitUnitary collective_rotation(const Vector3& axis, double theta) {
  return rotation(Qubit::A, axis, theta) * rotation(Qubit::B, axis, theta);
}

TwoQubitUnitary canonical_cpf() { return TwoQubitUnitary(Eigen::Vector4cd(1, 1, 1, -1).asDiagonal().toDenseMatrix()); }

TwoQubitUnitary canonical_cnot() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return TwoQubitUnitary(m);
}

TwoQubitUnitary canonical_swap() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return TwoQubitUnitary(m);
}

double coupling_time(double gamma_x, double J_A, double J_B) {
  const double exchange = 2.0 * J_A * J_B * gamma_x;
  if (exchange == 0.0 || !std::isfinite(exchange)) {
    throw DomainError("no finite coupling time: J_A J_B gamma_x = 0");
  }
  return kPi / (2.0 * std::abs(exchange));
}

double swap_time(double gamma, double J_A, double J_B) {
  const double exchange = 2.0 * J_A * J_B * gamma;
  if (exchange == 0.0 || !std::isfinite(exchange)) throw DomainError("no finite swap time: J_A J_B gamma = 0");
  return kPi / std::abs(exchange);
}

TwoQubitUnitary evolve_effective(double gamma_x, double gamma_z, double J_A, double J_B, double t) {
  if (t < 0.0) throw DomainError("evolution time must be non-negative");
  const double jxy = 2.0 * J_A * J_B * gamma_x;
  const double jz = 2.0 * J_A * J_B * gamma_z;
  // Triplet m=+-1 states carry jz/4; the {|01>,|10>} block is
  // -jz/4 + (jxy/2) X, diagonal in the triplet/singlet combinations.
  Matrix4c u = Matrix4c::Zero();
  const Complex outer = std::exp(-kI * (0.25 * jz * t));
  const Complex inner = std::exp(kI * (0.25 * jz * t));
  const double c = std::cos(0.5 * jxy * t);
  const double s = std::sin(0.5 * jxy * t);
  u(0, 0) = u(3, 3) = outer;
  u(1, 1) = u(2, 2) = inner * c;
  u(1, 2) = u(2, 1) = -kI * inner * s;
  return TwoQubitUnitary(u);
}

TwoQubitUnitary realize(const PulseSchedule& schedule, double gamma_x, double gamma_z, double J_A, double J_B) {
  TwoQubitUnitary u = TwoQubitUnitary::identity();
  for (const auto& step : schedule.steps) {
    switch (step.kind) {
      case PulseKind::rotation: u = rotation(step.qubit, step.axis, step.angle) * u; break;
      case PulseKind::collective_rotation: u = collective_rotation(step.axis, step.angle) * u; break;
      case PulseKind::exchange: u = evolve_effective(gamma_x, gamma_z, J_A, J_B, step.duration) * u; break;
    }
  }
  return u;
}

PulseSchedule cpf_schedule(double gamma_x, double /*gamma_z*/, double J_A, double J_B) {
  PulseSchedule s;
  s.t_c = coupling_time(gamma_x, J_A, J_B);
  // A negative exchange runs the echo backwards in phase; the complex
  // conjugate of every single-qubit pulse compensates.
  const double sign = J_A * J_B * gamma_x > 0 ? 1.0 : -1.0;
  const Vector3 frame = sign > 0 ? n1() : Vector3(n1().x(), -n1().y(), n1().z());
  const auto rot = [](Qubit q, Vector3 axis, double angle, const char* label) {
    return PulseStep{PulseKind::rotation, q, axis, angle, 0.0, label};
  };
  const auto exchange = [&](const char* label) {
    return PulseStep{PulseKind::exchange, Qubit::A, Vector3::UnitZ(), 0.0, s.t_c, label};
  };
  s.steps = {
      rot(Qubit::A, Vector3::UnitX(), sign * kPi / 2, "R_A^x(pi/2)"),
      rot(Qubit::B, Vector3::UnitX(), sign * kPi / 2, "R_B^x(pi/2)"),
      exchange("U(pi/2)"),
      rot(Qubit::A, Vector3::UnitY(), -kPi, "R_A^y(-pi)"),
      exchange("U(pi/2)"),
      rot(Qubit::A, Vector3::UnitY(), kPi, "R_A^y(pi) refocus"),
      {PulseKind::collective_rotation, Qubit::A, frame, -sign * 2.0 * kPi / 3.0, 0.0, "exp[i 2pi/3 n1.(tau_A+tau_B)]"},
  };
  return s;
}

TwoQubitUnitary cpf(double gamma_x, double gamma_z, double J_A, double J_B) {
  return realize(cpf_schedule(gamma_x, gamma_z, J_A, J_B), gamma_x, gamma_z, J_A, J_B);
}

TwoQubitUnitary cnot(double gamma_x, double gamma_z, double J_A, double J_B) {
  const auto ry = rotation(Qubit::B, Axis::y, kPi / 2);
  return ry * cpf(gamma_x, gamma_z, J_A, J_B) * ry.adjoint();
}

TwoQubitUnitary swap_gate(double gamma, double J_A, double J_B) {
  return evolve_effective(gamma, gamma, J_A, J_B, swap_time(gamma, J_A, J_B));
}

TwoQubitUnitary cpf_sequence_unrefocused(double gamma_x, double gamma_z, double J_A, double J_B) {
  const double tc = coupling_time(gamma_x, J_A, J_B);
  const auto u = evolve_effective(gamma_x, gamma_z, J_A, J_B, tc);
  return collective_rotation(n1(), -2.0 * kPi / 3.0) * collective_rotation(n2(), -2.0 * kPi / 3.0) * u *
         rotation(Qubit::A, Axis::y, -kPi) * u * rotation(Qubit::A, Axis::x, kPi / 2) *
         rotation(Qubit::B, Axis::x, kPi / 2);
}

SingleQubitPulse single_qubit_pulse(Axis axis, double b, double duration, double J_A,
                                    const std::array<double, 3>& gamma_mm, double ground_energy) {
  if (duration < 0.0) throw DomainError("pulse duration must be non-negative");
  SingleQubitPulse p;
  // H = b tau^a for a time t gives exp(-i b t tau^a) = R^a(b t).
  p.theta = b * duration;
  const double shift = ground_energy + 0.25 * J_A * J_A * (gamma_mm[0] + gamma_mm[1] + gamma_mm[2]);
  p.phase = shift * duration;
  p.schedule.theta = p.theta;
  p.schedule.phase = p.phase;
  p.schedule.steps.push_back({PulseKind::rotation, Qubit::A, unit(axis), p.theta, duration,
                              std::string("R_A^") + axis_name(axis)});
  return p;
}

double error_formula(double delta_x, double delta_z) {
  const auto term = [](double d) { return std::sqrt(2.0 * (1.0 - std::cos(kPi * d / 4.0))); };
  return std::max(term(delta_x), term(delta_z));
}

GateErrorReport gate_error(const EffectiveCoupling& unperturbed, const EffectiveCoupling& perturbed, double delta_m,
                           double delta_n) {
  GateErrorReport r;
  r.delta_m = delta_m;
  r.delta_n = delta_n;
  r.m = unperturbed.m;
  r.n = unperturbed.n;
  r.J_A = unperturbed.J_A;
  r.J_B = unperturbed.J_B;
  r.rungs = unperturbed.context.rungs;
  r.delta = unperturbed.context.delta;
  r.J = unperturbed.context.J;
  r.gamma_x0 = unperturbed.gamma_x;
  r.gamma_z0 = unperturbed.gamma_z;
  r.gamma_x = perturbed.gamma_x;
  r.gamma_z = perturbed.gamma_z;
  r.delta_x = (r.gamma_x0 - r.gamma_x) / r.gamma_x0;
  r.delta_z = (r.gamma_z0 - r.gamma_z) / r.gamma_x0;
  r.n_formula = error_formula(r.delta_x, r.delta_z);
  r.t_c = coupling_time(r.gamma_x0, r.J_A, r.J_B);
  const auto u0 = evolve_effective(r.gamma_x0, r.gamma_z0, r.J_A, r.J_B, r.t_c);
  const auto u = evolve_effective(r.gamma_x, r.gamma_z, r.J_A, r.J_B, r.t_c);
  r.n_direct = distance_up_to_phase(u, u0);
  r.n_direct_raw = operator_distance(u, u0);
  return r;
}

GateErrorReport gate_error(const LadderSpec& spec, Node m, Node n, double delta_m, double delta_n, double J_A,
                           double J_B, Backend backend) {
  const auto base = compute_coupling(spec, m, n, J_A, J_B, backend);
  const auto perturbed = compute_coupling(apply_fluctuations(spec, m, delta_m, n, delta_n), m, n, J_A, J_B, backend);
  return gate_error(base, perturbed, delta_m, delta_n);
}

AdiabaticReport adiabatic_check(const EffectiveCoupling& coupling) {
  const bool isotropic = coupling.context.delta == 1.0 && coupling.context.bond_overrides.empty();
  AdiabaticReport r{};
  r.gate_time = isotropic ? swap_time(coupling.gamma_x, coupling.J_A, coupling.J_B)
                          : coupling_time(coupling.gamma_x, coupling.J_A, coupling.J_B);
  r.gap = coupling.gap;
  r.product = r.gate_time * r.gap;
  r.bulk_product = r.gate_time * 0.5 * coupling.context.J;
  r.scale = coupling.context.J / (4.0 * std::abs(coupling.J_A * coupling.J_B * coupling.gamma_x));
  r.pass = r.product > 2.0 * kPi && r.bulk_product > 2.0 * kPi;
  return r;
}

AdiabaticReport adiabatic_check(const LadderSpec& spec, Node m, Node n, double J_A, double J_B, Backend backend) {
  return adiabatic_check(compute_coupling(spec, m, n, J_A, J_B, backend));
}

}  // namespace spinbus
