#include "spinbus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace spinbus {

namespace {

const Complex kI{0.0, 1.0};

// Bit of a qubit inside the low qubit block of the index.
int qubit_shift(std::size_t position, std::size_t count) { return static_cast<int>(count - 1 - position); }

}  // namespace

FullSystem::FullSystem(LadderSpec spec, std::vector<Attachment> attachments, std::size_t budget)
    : spec_(std::move(spec)), attachments_(std::move(attachments)) {
  spec_.validate();
  if (attachments_.size() > 2) throw DomainError("at most two qubits can be attached");
  std::stable_sort(attachments_.begin(), attachments_.end(),
                   [](const Attachment& a, const Attachment& b) { return a.qubit < b.qubit; });
  if (attachments_.size() == 2 && attachments_[0].qubit == attachments_[1].qubit) {
    throw DomainError("qubit attached twice");
  }
  const int L = spec_.rungs;
  const std::size_t bus_dim = std::size_t{1} << (2 * L);
  const std::size_t nq = attachments_.size();
  const std::size_t dim = bus_dim << nq;
  if (dim > budget) {
    std::ostringstream msg;
    msg << "full system dimension " << dim << " exceeds the dense budget " << budget;
    throw DomainError(msg.str());
  }
  for (const auto& a : attachments_) {
    node_to_site(a.node, L);
    if (std::abs(a.coupling) > kWeakCouplingRatio * spec_.J) {
      std::ostringstream msg;
      msg << "qubit " << (a.qubit == Qubit::A ? 'A' : 'B') << " coupling " << a.coupling << " exceeds "
          << kWeakCouplingRatio << " J; the weak-coupling picture is not expected to hold";
      warnings_.push_back(msg.str());
    }
  }

  const Eigen::MatrixXd bus = build_hamiltonian(spec_).dense(Basis::full(L));
  const std::size_t qdim = std::size_t{1} << nq;
  h_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < bus_dim; ++r) {
    for (std::size_t c = 0; c < bus_dim; ++c) {
      const double v = bus(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v == 0.0) continue;
      for (std::size_t q = 0; q < qdim; ++q) {
        h_(static_cast<Eigen::Index>(r * qdim + q), static_cast<Eigen::Index>(c * qdim + q)) += v;
      }
    }
  }

  for (std::size_t p = 0; p < nq; ++p) {
    const auto& a = attachments_[p];
    const int qbit = qubit_shift(p, nq);
    const int sbit = site_bit(node_to_site(a.node, L), L);
    for (std::size_t i = 0; i < dim; ++i) {
      const State bus_state = static_cast<State>(i / qdim);
      const bool bus_up = (bus_state >> sbit) & 1U;
      const bool q_up = ((i >> qbit) & 1U) == 0;
      const auto row = static_cast<Eigen::Index>(i);
      // J tau.s = J [tz sz + (t+ s- + t- s+)/2]
      h_(row, row) += 0.25 * a.coupling * ((bus_up == q_up) ? 1.0 : -1.0);
      if (bus_up != q_up) {
        const std::size_t j = (static_cast<std::size_t>(bus_state ^ (State{1} << sbit)) * qdim) |
                              ((i % qdim) ^ (std::size_t{1} << qbit));
        h_(static_cast<Eigen::Index>(j), row) += 0.5 * a.coupling;
      }
      // b.tau on the qubit
      h_(row, row) += 0.5 * a.field.z() * (q_up ? 1.0 : -1.0);
      const auto flipped = static_cast<Eigen::Index>(i ^ (std::size_t{1} << qbit));
      // <flipped| (bx sx + by sy)/2 |i>: sigma^y|up> = i|down>, sigma^y|down> = -i|up>
      h_(flipped, row) += 0.5 * (a.field.x() + (q_up ? kI : -kI) * a.field.y());
    }
  }
}

Eigen::VectorXd FullSystem::total_sz() const {
  const std::size_t nq = attachments_.size();
  const std::size_t qdim = std::size_t{1} << nq;
  Eigen::VectorXd sz(h_.rows());
  for (Eigen::Index i = 0; i < h_.rows(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    double s = spinbus::total_sz(static_cast<State>(u / qdim), spec_.rungs);
    for (std::size_t p = 0; p < nq; ++p) s += ((u >> p) & 1U) ? -0.5 : 0.5;
    sz[i] = s;
  }
  return sz;
}

FullSystem full_hamiltonian(const LadderSpec& spec, const std::vector<Attachment>& attachments, std::size_t budget) {
  return FullSystem(spec, attachments, budget);
}

ExactPropagator::ExactPropagator(const FullSystem& system) : h_(system.matrix()) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

CVector ExactPropagator::evolve(const CVector& initial, double t) const {
  if (initial.size() != vectors_.rows()) throw DomainError("evolve: state dimension mismatch");
  CVector coeff = vectors_.adjoint() * initial;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff[k] *= std::exp(-kI * (energies_[k] * t));
  return vectors_ * coeff;
}

double ExactPropagator::energy(const CVector& state) const { return state.dot(h_ * state).real() / state.squaredNorm(); }

CVector evolve_exact(const FullSystem& system, const CVector& initial, double t) {
  return ExactPropagator(system).evolve(initial, t);
}

EffectiveValidation validate_effective_spectrum(const LadderSpec& spec, Node m, Node n, double J_A, double J_B,
                                                Backend backend) {
  EffectiveValidation r;
  r.coupling = compute_coupling(spec, m, n, J_A, J_B, backend);
  r.bus_gap = r.coupling.gap;

  const FullSystem system(spec, {{Qubit::A, m, J_A, Vector3::Zero()}, {Qubit::B, n, J_B, Vector3::Zero()}});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> exact(system.matrix(), Eigen::EigenvaluesOnly);
  if (exact.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);

  const auto heff = effective_hamiltonian(r.coupling, J_A, J_B);
  Eigen::SelfAdjointEigenSolver<Matrix4c> model(heff.interaction, Eigen::EigenvaluesOnly);
  for (int k = 0; k < 4; ++k) {
    r.exact[static_cast<std::size_t>(k)] = exact.eigenvalues()[k];
    r.effective[static_cast<std::size_t>(k)] = r.coupling.ground_energy + heff.c_eff + model.eigenvalues()[k];
    r.absolute_error = std::max(r.absolute_error, std::abs(r.exact[static_cast<std::size_t>(k)] -
                                                           r.effective[static_cast<std::size_t>(k)]));
  }
  for (std::size_t k = 1; k < 4; ++k) {
    r.exact_splittings[k - 1] = r.exact[k] - r.exact[0];
    r.effective_splittings[k - 1] = r.effective[k] - r.effective[0];
    r.splitting_error = std::max(r.splitting_error, std::abs(r.exact_splittings[k - 1] - r.effective_splittings[k - 1]));
  }
  r.span = r.effective[3] - r.effective[0];
  if (r.span > 0.0) {
    r.relative_error = r.splitting_error / r.span;
  } else {
    r.relative_error = r.splitting_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }

  r.separation = exact.eigenvalues()[4] - r.exact[3];
  if (r.separation < 0.5 * r.bus_gap) {
    r.level_crossing = true;
    std::ostringstream msg;
    msg << "fifth level sits " << r.separation << " above the quadruplet, less than half the bus gap " << r.bus_gap
        << "; the weak-coupling assumption is violated";
    r.diagnostic = msg.str();
  }
  return r;
}

Matrix2c reduce_to_qubit(const CVector& state) {
  if (state.size() % 2 != 0) throw DomainError("reduce_to_qubit: odd dimension");
  Matrix2c rho = Matrix2c::Zero();
  for (Eigen::Index b = 0; b < state.size() / 2; ++b) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rho(i, j) += state[2 * b + i] * std::conj(state[2 * b + j]);
  }
  return rho;
}

ChannelReport single_qubit_channel(const LadderSpec& spec, Node m, double J_A, Axis axis, double theta,
                                   double field) {
  if (field <= 0.0) throw DomainError("single_qubit_channel: field magnitude must be positive");
  ChannelReport r;
  r.axis = axis;
  r.theta = theta;
  r.field = field;
  r.duration = std::abs(theta) / field;
  Vector3 b = Vector3::Zero();
  b[static_cast<int>(axis)] = theta >= 0 ? field : -field;

  const FullSystem system(spec, {{Qubit::A, m, J_A, b}});
  const ExactPropagator propagator(system);
  const GroundState ground = ground_and_gap(build_hamiltonian(spec));
  const Matrix2c target = single_qubit_rotation(b.normalized(), theta >= 0 ? theta : -theta);

  const double h = 1.0 / std::sqrt(2.0);
  const std::array<Eigen::Vector2cd, 6> probes{
      Eigen::Vector2cd(1, 0),     Eigen::Vector2cd(0, 1),      Eigen::Vector2cd(h, h),
      Eigen::Vector2cd(h, -h),    Eigen::Vector2cd(h, h * kI), Eigen::Vector2cd(h, -h * kI),
  };
  for (const auto& phi : probes) {
    CVector initial(static_cast<Eigen::Index>(system.dimension()));
    for (Eigen::Index i = 0; i < ground.vector.size(); ++i) {
      initial[2 * i] = ground.vector[i] * phi[0];
      initial[2 * i + 1] = ground.vector[i] * phi[1];
    }
    const Matrix2c rho = reduce_to_qubit(propagator.evolve(initial, r.duration));
    const Eigen::Vector2cd expected = target * phi;
    r.min_fidelity = std::min(r.min_fidelity, expected.dot(rho * expected).real());
  }
  return r;
}

}  // namespace spinbus
