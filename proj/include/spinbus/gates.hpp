#pragma once

// Two-qubit gate synthesis on top of the effective XXZ exchange, plus the
// anisotropy-fluctuation error model.
//
// Conventions: hbar = 1, tau = sigma/2, R^a(theta) = exp(-i theta sigma^a / 2).
// Two-qubit basis |q_A q_B>, index 2 q_A + q_B, |0> = spin up.

#include <string>
#include <vector>

#include "spinbus/effective.hpp"

namespace spinbus {

using Matrix2c = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3d;

enum class Qubit { A, B };

class TwoQubitUnitary {
 public:
  /// Throws DomainError unless U^dag U = 1 within `tolerance`.
  explicit TwoQubitUnitary(const Matrix4c& m, double tolerance = 1e-10);

  static TwoQubitUnitary identity();

  const Matrix4c& matrix() const noexcept { return m_; }
  TwoQubitUnitary adjoint() const;
  double unitarity_error() const;

  friend TwoQubitUnitary operator*(const TwoQubitUnitary& a, const TwoQubitUnitary& b);

 private:
  struct Unchecked {};
  TwoQubitUnitary(const Matrix4c& m, Unchecked) : m_(m) {}
  Matrix4c m_;
};

/// Spectral norm ||U - V||.
double operator_distance(const TwoQubitUnitary& u, const TwoQubitUnitary& v);

/// min over phi of ||U - e^{i phi} V||, exact for unitaries: the eigenphases
/// of V^dag U are covered by the smallest arc, whose midpoint is the optimal
/// phase.
double distance_up_to_phase(const TwoQubitUnitary& u, const TwoQubitUnitary& v);

Matrix2c pauli(Axis a);
Matrix2c single_qubit_rotation(const Vector3& unit_axis, double theta);

TwoQubitUnitary rotation(Qubit q, Axis axis, double theta);
/// Throws DomainError if `axis` is not a unit vector.
TwoQubitUnitary rotation(Qubit q, const Vector3& axis, double theta);
/// Same rotation on both qubits: exp(-i theta n.(tau_A + tau_B)).
TwoQubitUnitary collective_rotation(const Vector3& axis, double theta);

TwoQubitUnitary canonical_cpf();
TwoQubitUnitary canonical_cnot();  // control A, target B
TwoQubitUnitary canonical_swap();

/// Duration for which the accumulated xy phase  int J^x dt  equals pi/2:
/// t_c = pi / (4 |J_A J_B gamma_x|). Throws DomainError when gamma_x J_A J_B = 0.
double coupling_time(double gamma_x, double J_A, double J_B);
/// t_s = pi / |J^a| with J^a = 2 J_A J_B gamma.
double swap_time(double gamma, double J_A, double J_B);

/// exp(-i t H_int) for the XXZ interaction, constant shift excluded.
TwoQubitUnitary evolve_effective(double gamma_x, double gamma_z, double J_A, double J_B, double t);

enum class PulseKind { rotation, collective_rotation, exchange };

struct PulseStep {
  PulseKind kind;
  Qubit qubit = Qubit::A;  // rotation only
  Vector3 axis = Vector3::UnitZ();
  double angle = 0.0;     // rotations
  double duration = 0.0;  // exchange
  std::string label;
};

/// Steps in time order (first applied first), plus the scalars that set them.
struct PulseSchedule {
  std::vector<PulseStep> steps;
  double theta = 0.0;    // single-qubit rotation angle, when applicable
  double phase = 0.0;    // accumulated global phase Phi
  double t_c = 0.0;
  double t_s = 0.0;
};

TwoQubitUnitary realize(const PulseSchedule& schedule, double gamma_x, double gamma_z, double J_A, double J_B);

/// Echo-based controlled phase flip. The exchange pulses cancel the XX and ZZ
/// parts, so the result does not depend on gamma_z.
PulseSchedule cpf_schedule(double gamma_x, double gamma_z, double J_A, double J_B);
TwoQubitUnitary cpf(double gamma_x, double gamma_z, double J_A, double J_B);
/// R_B^y(pi/2) CPF R_B^y(pi/2)^dag.
TwoQubitUnitary cnot(double gamma_x, double gamma_z, double J_A, double J_B);
/// Isotropic exchange for t_s; equals SWAP up to a global phase.
TwoQubitUnitary swap_gate(double gamma, double J_A, double J_B);

/// R_n1 R_n2 U(pi/2) R_A^y(-pi) U(pi/2) R_A^x(pi/2) R_B^x(pi/2) with both
/// collective rotations and no refocusing pulse. This leaves an uncorrected
/// R_A^y(-pi) and is not a CPF; `validate` reports its distance.
TwoQubitUnitary cpf_sequence_unrefocused(double gamma_x, double gamma_z, double J_A, double J_B);

struct SingleQubitPulse {
  double theta;  // realized rotation angle R^a(theta)
  double phase;  // Phi = int (e0 + (J_A^2/4) sum_a gamma^a_{m,m}) dt
  PulseSchedule schedule;
};

/// Constant field b along `axis` on qubit A for `duration`.
SingleQubitPulse single_qubit_pulse(Axis axis, double b, double duration, double J_A,
                                    const std::array<double, 3>& gamma_mm, double ground_energy = 0.0);

/// max{ sqrt(2[1 - cos(pi dx/4)]), sqrt(2[1 - cos(pi dz/4)]) }.
double error_formula(double delta_x, double delta_z);

struct GateErrorReport {
  double delta_m = 0, delta_n = 0;
  double delta_x = 0, delta_z = 0;
  double n_formula = 0;
  double n_direct = 0;      // global phase minimized
  double n_direct_raw = 0;  // plain spectral norm
  double t_c = 0;
  double gamma_x0 = 0, gamma_z0 = 0;
  double gamma_x = 0, gamma_z = 0;
  int rungs = 0;
  double delta = 0;
  Node m, n;
  double J = 0, J_A = 0, J_B = 0;
};

/// Error of U(delta_m, delta_n) against U(0,0) at the unperturbed t_c.
GateErrorReport gate_error(const EffectiveCoupling& unperturbed, const EffectiveCoupling& perturbed, double delta_m,
                           double delta_n);
GateErrorReport gate_error(const LadderSpec& spec, Node m, Node n, double delta_m, double delta_n, double J_A,
                           double J_B, Backend backend = Backend::spectrum_sum);

struct AdiabaticReport {
  double gate_time;     // t_s at uniform delta = 1, t_c otherwise
  double gap;           // e1 - e0 of this bus
  double product;       // gate_time * gap / hbar
  double bulk_product;  // gate_time * J/2 / hbar, the long-ladder gap limit
  double scale;         // J / (4 J_A J_B |gamma^x|)
  bool pass;            // both products exceed 2 pi
};

AdiabaticReport adiabatic_check(const EffectiveCoupling& coupling);
AdiabaticReport adiabatic_check(const LadderSpec& spec, Node m, Node n, double J_A, double J_B,
                                Backend backend = Backend::spectrum_sum);

}  // namespace spinbus
