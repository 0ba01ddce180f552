#include "spinbus/effective.hpp"

#include <cmath>
#include <sstream>

namespace spinbus {

const char* backend_name(Backend b) { return b == Backend::spectrum_sum ? "sum" : "resolvent"; }

Backend parse_backend(const std::string& name) {
  if (name == "sum" || name == "spectrum-sum" || name == "spectrum_sum") return Backend::spectrum_sum;
  if (name == "resolvent") return Backend::resolvent;
  throw DomainError("unknown backend '" + name + "' (expected sum|resolvent)");
}

namespace {

double checked_real(Complex value, const char* what) {
  if (std::abs(value.imag()) > kImaginaryTolerance) {
    std::ostringstream msg;
    msg << what << ": imaginary part " << value.imag() << " exceeds " << kImaginaryTolerance;
    throw std::runtime_error(msg.str());
  }
  return value.real();
}

}  // namespace

Complex gamma_correlator(const SpectrumResult& spectrum, Node m, Node n, Axis a, Axis b) {
  if (spectrum.ground_is_degenerate()) {
    throw DomainError("effective coupling needs a non-degenerate bus ground state");
  }
  const int L = spectrum.rungs();
  const Basis full = Basis::full(L);
  const CVector psi0 = spectrum.full_vector(0).cast<Complex>();
  const CVector wm = apply_spin(node_to_site(m, L), a, psi0, full);
  const CVector wn = apply_spin(node_to_site(n, L), b, psi0, full);
  const double e0 = spectrum.energy(0);

  // Project both excitations onto each sector's eigenbasis at once.
  std::vector<CVector> om(spectrum.sectors().size());
  std::vector<CVector> on(spectrum.sectors().size());
  for (std::size_t s = 0; s < spectrum.sectors().size(); ++s) {
    const auto& block = spectrum.sectors()[s];
    CVector gm(static_cast<Eigen::Index>(block.basis.size()));
    CVector gn(gm.size());
    for (std::size_t i = 0; i < block.basis.size(); ++i) {
      gm[static_cast<Eigen::Index>(i)] = wm[block.basis.state(i)];
      gn[static_cast<Eigen::Index>(i)] = wn[block.basis.state(i)];
    }
    om[s] = block.vectors.transpose().cast<Complex>() * gm;
    on[s] = block.vectors.transpose().cast<Complex>() * gn;
  }

  Complex sum{};
  for (std::size_t k = 1; k < spectrum.size(); ++k) {
    const auto& level = spectrum.levels()[k];
    const auto s = static_cast<std::size_t>(level.sector);
    sum += std::conj(om[s][level.column]) * on[s][level.column] / (level.energy - e0);
  }
  return -sum;
}

double gamma_spectrum_sum(const SpectrumResult& spectrum, Node m, Node n, Axis axis) {
  return checked_real(gamma_correlator(spectrum, m, n, axis, axis), "gamma_spectrum_sum");
}

ResolventSolver::ResolventSolver(const HamiltonianOp& h, double ground_energy, RVector ground_state,
                                 CgOptions options)
    : h_(h), e0_(ground_energy), psi0_(ground_state.cast<Complex>()), full_(Basis::full(h.rungs())),
      options_(options) {
  if (static_cast<std::size_t>(psi0_.size()) != full_.size()) {
    throw DomainError("ResolventSolver: ground state must live in the full 4^L space");
  }
  psi0_.normalize();
}

CVector ResolventSolver::excite(Node n, Axis axis) const {
  return apply_spin(node_to_site(n, h_.rungs()), axis, psi0_, full_);
}

const CVector& ResolventSolver::response(Node n, Axis axis) {
  const auto key = std::make_pair(n.value, axis);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const auto op = [this](const CVector& in, CVector& out) {
    h_.apply(full_, in, out);
    out -= e0_ * in;
  };
  auto solved = projected_cg(op, excite(n, axis), psi0_, options_);
  max_residual_ = std::max(max_residual_, solved.relative_residual);
  return cache_.emplace(key, std::move(solved.solution)).first->second;
}

Complex ResolventSolver::correlator(Node m, Node n, Axis a, Axis b) {
  return -excite(m, a).dot(response(n, b));
}

double ResolventSolver::gamma(Node m, Node n, Axis axis) {
  return checked_real(correlator(m, n, axis, axis), "gamma_resolvent");
}

double gamma_resolvent(const HamiltonianOp& h, double ground_energy, const RVector& ground_state, Node m, Node n,
                       Axis axis) {
  ResolventSolver solver(h, ground_energy, ground_state);
  return solver.gamma(m, n, axis);
}

double EffectiveCoupling::gamma(Axis a) const {
  switch (a) {
    case Axis::x: return gamma_x;
    case Axis::y: return gamma_y;
    case Axis::z: return gamma_z;
  }
  return 0.0;
}

double constant_shift(const std::array<double, 3>& self_m, const std::array<double, 3>& self_n, double J_A,
                      double J_B) {
  double sm = 0.0;
  double sn = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sm += self_m[i];
    sn += self_n[i];
  }
  return 0.25 * J_A * J_A * sm + 0.25 * J_B * J_B * sn;
}

namespace {

template <typename GammaFn>
EffectiveCoupling assemble(GammaFn&& gamma, const LadderSpec& spec, Node m, Node n, double J_A, double J_B,
                           Backend method) {
  if (m == n) throw DomainError("effective coupling needs two distinct nodes");
  EffectiveCoupling c;
  c.m = m;
  c.n = n;
  c.gamma_x = gamma(m, n, Axis::x);
  c.gamma_y = gamma(m, n, Axis::y);
  c.gamma_z = gamma(m, n, Axis::z);
  for (std::size_t i = 0; i < 3; ++i) {
    c.self_m[i] = gamma(m, m, kAxes[i]);
    c.self_n[i] = gamma(n, n, kAxes[i]);
  }
  c.J_A = J_A;
  c.J_B = J_B;
  c.c_eff = constant_shift(c.self_m, c.self_n, J_A, J_B);
  c.delta_eff = c.gamma_z / c.gamma_x;
  c.method = method;
  c.context = {spec.rungs, spec.delta, spec.J, spec.bond_overrides};
  return c;
}

}  // namespace

EffectiveCoupling coupling_from_spectrum(const SpectrumResult& spectrum, const LadderSpec& spec, Node m, Node n,
                                         double J_A, double J_B) {
  auto c = assemble([&](Node a, Node b, Axis ax) { return gamma_spectrum_sum(spectrum, a, b, ax); }, spec, m, n,
                    J_A, J_B, Backend::spectrum_sum);
  const auto g = ground_and_gap(spectrum);
  c.ground_energy = g.energy;
  c.gap = g.gap;
  return c;
}

EffectiveCoupling coupling_from_resolvent(ResolventSolver& solver, const GroundState& ground, const LadderSpec& spec,
                                          Node m, Node n, double J_A, double J_B) {
  auto c = assemble([&](Node a, Node b, Axis ax) { return solver.gamma(a, b, ax); }, spec, m, n, J_A, J_B,
                    Backend::resolvent);
  c.ground_energy = ground.energy;
  c.gap = ground.gap;
  return c;
}

EffectiveCoupling compute_coupling(const LadderSpec& spec, Node m, Node n, double J_A, double J_B, Backend backend) {
  const HamiltonianOp h = build_hamiltonian(spec);
  if (backend == Backend::spectrum_sum) {
    return coupling_from_spectrum(full_spectrum(h), spec, m, n, J_A, J_B);
  }
  const GroundState ground = ground_and_gap(h);
  if (!(ground.gap > 0.0)) throw DomainError("effective coupling needs a gapped, non-degenerate ground state");
  ResolventSolver solver(h, ground.energy, ground.vector);
  return coupling_from_resolvent(solver, ground, spec, m, n, J_A, J_B);
}

Matrix4c xxz_interaction(double exchange_xy, double exchange_z) {
  Matrix4c h = Matrix4c::Zero();
  const double zz = 0.25 * exchange_z;
  h(0, 0) = zz;
  h(1, 1) = -zz;
  h(2, 2) = -zz;
  h(3, 3) = zz;
  // tau^x tau^x + tau^y tau^y = (|01><10| + |10><01|) / 2
  h(1, 2) = h(2, 1) = 0.5 * exchange_xy;
  return h;
}

EffectiveHamiltonian effective_hamiltonian(const EffectiveCoupling& coupling, double J_A, double J_B) {
  const double scale = 2.0 * J_A * J_B;
  return {xxz_interaction(scale * coupling.gamma_x, scale * coupling.gamma_z),
          constant_shift(coupling.self_m, coupling.self_n, J_A, J_B)};
}

std::vector<ProfileEntry> antiferro_ferro_profile(const LadderSpec& spec, Node m, double J_A, double J_B,
                                                  Backend backend) {
  const HamiltonianOp h = build_hamiltonian(spec);
  const int L = spec.rungs;
  node_to_site(m, L);
  std::vector<ProfileEntry> out;
  const auto push = [&](Node n, double g) {
    out.push_back({n, n.value - m.value, g, 2.0 * J_A * J_B * g});
  };
  if (backend == Backend::spectrum_sum) {
    const auto spectrum = full_spectrum(h);
    for (int n = 1; n <= 2 * L; ++n) {
      if (n != m.value) push({n}, gamma_spectrum_sum(spectrum, m, {n}, Axis::x));
    }
  } else {
    const auto ground = ground_and_gap(h);
    ResolventSolver solver(h, ground.energy, ground.vector);
    // gamma is symmetric in (m, n): one solve for s_m^x serves every n.
    for (int n = 1; n <= 2 * L; ++n) {
      if (n != m.value) push({n}, solver.gamma({n}, m, Axis::x));
    }
  }
  return out;
}

}  // namespace spinbus
