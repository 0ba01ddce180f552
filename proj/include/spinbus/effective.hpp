#pragma once

// Second-order effective coupling between two qubits attached to bus nodes m
// and n:
//
//   gamma^a_{m,n} = - sum_{k>0} <0|s_m^a|k><k|s_n^a|0> / (e_k - e_0)
//
// evaluated either from a complete spectrum or by solving the projected
// resolvent equation (H - e_0) x = Q s_n^a |0>.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "spinbus/spectra.hpp"

namespace spinbus {

enum class Backend { spectrum_sum, resolvent };

const char* backend_name(Backend b);
Backend parse_backend(const std::string& name);

inline constexpr double kImaginaryTolerance = 1e-10;

/// <0|s_m^a R s_n^b|0> with R = sum_{k>0} |k><k| / (e_k - e_0), negated.
/// The complex value is returned as is; for a == b it is real.
Complex gamma_correlator(const SpectrumResult& spectrum, Node m, Node n, Axis a, Axis b);

/// Real gamma from a complete spectrum. Throws DomainError if the ground
/// state is degenerate, std::runtime_error if the imaginary part exceeds
/// kImaginaryTolerance.
double gamma_spectrum_sum(const SpectrumResult& spectrum, Node m, Node n, Axis axis);

/// Resolvent evaluation around a known non-degenerate ground state.
/// Solutions x_n^a are cached, so profiles over n reuse one solve per axis.
class ResolventSolver {
 public:
  ResolventSolver(const HamiltonianOp& h, double ground_energy, RVector ground_state, CgOptions options = {});

  double gamma(Node m, Node n, Axis axis);
  Complex correlator(Node m, Node n, Axis a, Axis b);

  int rungs() const noexcept { return h_.rungs(); }
  double max_residual() const noexcept { return max_residual_; }

 private:
  const CVector& response(Node n, Axis axis);
  CVector excite(Node n, Axis axis) const;

  HamiltonianOp h_;
  double e0_;
  CVector psi0_;
  Basis full_;
  CgOptions options_;
  std::map<std::pair<int, Axis>, CVector> cache_;
  double max_residual_ = 0.0;
};

double gamma_resolvent(const HamiltonianOp& h, double ground_energy, const RVector& ground_state, Node m, Node n,
                       Axis axis);

struct CouplingContext {
  int rungs;
  double delta;
  double J;
  std::map<Bond, double> bond_overrides;
};

/// Effective couplings for a node pair, plus the self terms that feed C_eff.
struct EffectiveCoupling {
  Node m, n;
  double gamma_x = 0, gamma_y = 0, gamma_z = 0;
  std::array<double, 3> self_m{};  // gamma^a_{m,m}
  std::array<double, 3> self_n{};  // gamma^a_{n,n}
  double J_A = 0, J_B = 0;
  double c_eff = 0;
  double delta_eff = 0;  // gamma_z / gamma_x
  Backend method = Backend::spectrum_sum;
  CouplingContext context;
  double ground_energy = 0;
  double gap = 0;

  double gamma(Axis a) const;
  double exchange(Axis a) const { return 2.0 * J_A * J_B * gamma(a); }
};

/// C_eff = (J_A^2/4) sum_a gamma^a_{m,m} + (J_B^2/4) sum_a gamma^a_{n,n}.
double constant_shift(const std::array<double, 3>& self_m, const std::array<double, 3>& self_n, double J_A,
                      double J_B);

/// Evaluates the bus once and returns the coupling for (m, n). The spectrum
/// backend needs L within the dense threshold.
EffectiveCoupling compute_coupling(const LadderSpec& spec, Node m, Node n, double J_A, double J_B,
                                   Backend backend = Backend::spectrum_sum);

/// Builds a coupling from an already diagonalized bus.
EffectiveCoupling coupling_from_spectrum(const SpectrumResult& spectrum, const LadderSpec& spec, Node m, Node n,
                                         double J_A, double J_B);
EffectiveCoupling coupling_from_resolvent(ResolventSolver& solver, const GroundState& ground, const LadderSpec& spec,
                                          Node m, Node n, double J_A, double J_B);

using Matrix4c = Eigen::Matrix4cd;

struct EffectiveHamiltonian {
  Matrix4c interaction;  // 2 J_A J_B [gx (tx tx + ty ty) + gz tz tz], tau = sigma/2
  double c_eff;
};

/// Two-qubit XXZ interaction with the qubit basis |q_A q_B>, index 2 q_A + q_B,
/// 0 = spin up.
Matrix4c xxz_interaction(double exchange_xy, double exchange_z);

EffectiveHamiltonian effective_hamiltonian(const EffectiveCoupling& coupling, double J_A, double J_B);

struct ProfileEntry {
  Node n;
  int distance;  // n - m
  double gamma_x;
  double exchange_x;  // J^x = 2 J_A J_B gamma^x
};

/// gamma^x_{m,n} for every n != m, in node order.
std::vector<ProfileEntry> antiferro_ferro_profile(const LadderSpec& spec, Node m, double J_A, double J_B,
                                                  Backend backend = Backend::resolvent);

}  // namespace spinbus
