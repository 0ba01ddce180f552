#pragma once

// Brute-force reference: the bus plus one or two attached qubits, H = H0 + H_in,
// diagonalized densely. Tensor order is bus first, then qubit A, then qubit B:
// index = bus_bits * 2^q + (A bit) * 2^(q-1) + (B bit), bit 0 = spin up.

#include <optional>
#include <string>
#include <vector>

#include "spinbus/gates.hpp"

namespace spinbus {

struct Attachment {
  Qubit qubit = Qubit::A;
  Node node;
  double coupling = 0.0;  // J_A or J_B
  Vector3 field = Vector3::Zero();
};

inline constexpr std::size_t kDenseBudget = 4096;
inline constexpr double kWeakCouplingRatio = 0.2;

class FullSystem {
 public:
  /// Throws DomainError when the dimension exceeds `budget`, when a qubit is
  /// attached twice, or when a node is out of range.
  FullSystem(LadderSpec spec, std::vector<Attachment> attachments, std::size_t budget = kDenseBudget);

  const LadderSpec& spec() const noexcept { return spec_; }
  const std::vector<Attachment>& attachments() const noexcept { return attachments_; }
  int qubits() const noexcept { return static_cast<int>(attachments_.size()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(h_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return h_; }

  /// Total S^z (bus plus qubits) of every product basis state.
  Eigen::VectorXd total_sz() const;

  /// Couplings above kWeakCouplingRatio * J, one message each.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  LadderSpec spec_;
  std::vector<Attachment> attachments_;
  Eigen::MatrixXcd h_;
  std::vector<std::string> warnings_;
};

FullSystem full_hamiltonian(const LadderSpec& spec, const std::vector<Attachment>& attachments,
                            std::size_t budget = kDenseBudget);

/// exp(-i H t) through one eigen-decomposition, reusable across times.
class ExactPropagator {
 public:
  explicit ExactPropagator(const FullSystem& system);

  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }

  CVector evolve(const CVector& initial, double t) const;
  double energy(const CVector& state) const;

 private:
  Eigen::MatrixXcd h_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

CVector evolve_exact(const FullSystem& system, const CVector& initial, double t);

struct EffectiveValidation {
  std::array<double, 4> exact{};      // lowest four levels of H0 + H_in
  std::array<double, 4> effective{};  // e0 + C_eff + eigenvalues of H_eff
  std::array<double, 3> exact_splittings{};
  std::array<double, 3> effective_splittings{};
  double absolute_error = 0;  // max |exact_k - effective_k|
  double splitting_error = 0; // max |exact split - effective split|
  double span = 0;            // effective e3 - e0
  double relative_error = 0;  // splitting_error / span
  double bus_gap = 0;
  double separation = 0;      // exact e4 - e3
  bool level_crossing = false;
  std::string diagnostic;
  EffectiveCoupling coupling;
};

/// Four lowest exact levels of the bus with two attached qubits against the
/// second-order model. Flags a crossing when the fifth exact level comes within
/// half a bus gap of the quadruplet.
EffectiveValidation validate_effective_spectrum(const LadderSpec& spec, Node m, Node n, double J_A, double J_B,
                                                Backend backend = Backend::spectrum_sum);

struct ChannelReport {
  Axis axis;
  double theta = 0;
  double field = 0;
  double duration = 0;
  double min_fidelity = 1;
  double infidelity() const { return 1.0 - min_fidelity; }
};

/// One qubit on node m in a field b along `axis` for theta / b: evolves
/// |psi0> (x) |phi> exactly for the six Pauli eigenstates phi, traces out the
/// bus and compares against R^axis(theta) |phi>.
ChannelReport single_qubit_channel(const LadderSpec& spec, Node m, double J_A, Axis axis, double theta, double field);

/// Reduced 2x2 density matrix of the last qubit for a bus (x) qubit state.
Matrix2c reduce_to_qubit(const CVector& state);

}  // namespace spinbus
