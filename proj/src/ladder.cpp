#include "spinbus/ladder.hpp"

#include <cmath>
#include <string>

namespace spinbus {

void LadderSpec::validate() const {
  if (rungs < 2 || rungs > kMaxRungs) {
    throw DomainError("L=" + std::to_string(rungs) + " outside 2.." + std::to_string(kMaxRungs));
  }
  if (!(J > 0.0) || !std::isfinite(J)) throw DomainError("J must be a positive finite energy");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw DomainError("anisotropy delta=" + std::to_string(delta) + " outside (0,1]");
  }
  for (const auto& [bond, value] : bond_overrides) {
    if (bond.chain != 1 && bond.chain != 2) throw DomainError("bond override on chain " + std::to_string(bond.chain));
    if (bond.rung < 1 || bond.rung >= rungs) {
      throw DomainError("bond override at rung " + std::to_string(bond.rung) + " is not an intra-chain bond");
    }
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("overridden anisotropy must be positive");
  }
}

double LadderSpec::anisotropy(Bond b) const {
  const auto it = bond_overrides.find(b);
  return it == bond_overrides.end() ? delta : it->second;
}

HamiltonianOp::HamiltonianOp(LadderSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  const int L = spec_.rungs;
  for (int chain = 1; chain <= 2; ++chain) {
    for (int j = 1; j < L; ++j) {
      terms_.push_back({site_bit({chain, j}, L), site_bit({chain, j + 1}, L), spec_.J,
                        spec_.J * spec_.anisotropy({chain, j})});
    }
  }
  for (int j = 1; j <= L; ++j) {
    terms_.push_back({site_bit({1, j}, L), site_bit({2, j}, L), spec_.J, spec_.J});
  }
}

double HamiltonianOp::diagonal(State s) const {
  double d = 0.0;
  for (const auto& t : terms_) {
    const bool same = ((s >> t.bit_a) & 1U) == ((s >> t.bit_b) & 1U);
    d += same ? 0.25 * t.zz : -0.25 * t.zz;
  }
  return d;
}

template <typename Vec>
void HamiltonianOp::apply_impl(const Basis& basis, const Vec& in, Vec& out) const {
  if (basis.rungs() != spec_.rungs) throw DomainError("Hamiltonian applied on a basis of another ladder");
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (in.size() != n) throw DomainError("Hamiltonian applied to a vector of the wrong dimension");
  out.resize(n);
  // Gather form: each output row only reads, so rows are independent.
  for (Eigen::Index i = 0; i < n; ++i) {
    const State s = basis.state(static_cast<std::size_t>(i));
    typename Vec::Scalar acc = diagonal(s) * in[i];
    for (const auto& t : terms_) {
      const State a = (s >> t.bit_a) & 1U;
      const State b = (s >> t.bit_b) & 1U;
      if (a == b) continue;
      const State flipped = s ^ ((State{1} << t.bit_a) | (State{1} << t.bit_b));
      acc += 0.5 * t.xy * in[basis.index(flipped)];
    }
    out[i] = acc;
  }
}

void HamiltonianOp::apply(const Basis& basis, const RVector& in, RVector& out) const {
  apply_impl(basis, in, out);
}

void HamiltonianOp::apply(const Basis& basis, const CVector& in, CVector& out) const {
  apply_impl(basis, in, out);
}

RVector HamiltonianOp::operator()(const Basis& basis, const RVector& in) const {
  RVector out;
  apply(basis, in, out);
  return out;
}

CVector HamiltonianOp::operator()(const Basis& basis, const CVector& in) const {
  CVector out;
  apply(basis, in, out);
  return out;
}

Eigen::MatrixXd HamiltonianOp::dense(const Basis& basis) const {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const State s = basis.state(static_cast<std::size_t>(i));
    h(i, i) = diagonal(s);
    for (const auto& t : terms_) {
      if (((s >> t.bit_a) & 1U) == ((s >> t.bit_b) & 1U)) continue;
      const State flipped = s ^ ((State{1} << t.bit_a) | (State{1} << t.bit_b));
      h(basis.index(flipped), i) += 0.5 * t.xy;
    }
  }
  return h;
}

double HamiltonianOp::norm_bound() const {
  double bound = 0.0;
  for (const auto& t : terms_) bound += 0.25 * std::abs(t.zz) + 0.5 * std::abs(t.xy);
  return bound;
}

HamiltonianOp build_hamiltonian(const LadderSpec& spec) { return HamiltonianOp(spec); }

std::vector<Bond> incident_bonds(Node node, int rungs) {
  const Site s = node_to_site(node, rungs);
  std::vector<Bond> out;
  if (s.rung > 1) out.push_back({s.chain, s.rung - 1});
  if (s.rung < rungs) out.push_back({s.chain, s.rung});
  return out;
}

LadderSpec apply_fluctuations(const LadderSpec& spec, Node m, double delta_m, Node n, double delta_n) {
  spec.validate();
  if (m == n) throw DomainError("fluctuation nodes must differ");
  for (const double d : {delta_m, delta_n}) {
    if (!(std::abs(d) <= kMaxFluctuation)) {
      throw DomainError("anisotropy fluctuation " + std::to_string(d) + " exceeds sanity bound 0.1");
    }
  }
  const auto bonds_m = incident_bonds(m, spec.rungs);
  const auto bonds_n = incident_bonds(n, spec.rungs);
  for (const auto& b : bonds_m) {
    for (const auto& c : bonds_n) {
      if (b == c && delta_m != delta_n) {
        throw DomainError("nodes " + std::to_string(m.value) + " and " + std::to_string(n.value) +
                          " share bond (chain " + std::to_string(b.chain) + ", rung " + std::to_string(b.rung) +
                          ") with conflicting fluctuations");
      }
    }
  }
  LadderSpec out = spec;
  const auto set = [&](const std::vector<Bond>& bonds, double d) {
    if (d == 0.0) return;
    for (const auto& b : bonds) out.bond_overrides[b] = spec.delta * (1.0 + d);
  };
  set(bonds_m, delta_m);
  set(bonds_n, delta_n);
  out.validate();
  return out;
}

}  // namespace spinbus
