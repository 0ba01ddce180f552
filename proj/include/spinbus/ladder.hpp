#pragma once

#include <map>
#include <vector>

#include "spinbus/hilbert.hpp"

namespace spinbus {

/// Intra-chain bond between rungs `rung` and `rung + 1` of `chain`.
struct Bond {
  int chain = 1;
  int rung = 1;
  friend auto operator<=>(const Bond&, const Bond&) = default;
};

/// Geometry and couplings of the bus. Energies are in the same unit as J.
struct LadderSpec {
  int rungs = 2;
  double J = 1.0;
  double delta = 1.0;
  std::map<Bond, double> bond_overrides;

  void validate() const;
  double anisotropy(Bond b) const;

  friend bool operator==(const LadderSpec&, const LadderSpec&) = default;
};

/// One two-site exchange term  xy*(s^x s^x + s^y s^y) + zz*s^z s^z.
struct Exchange {
  int bit_a;
  int bit_b;
  double xy;
  double zz;
};

/// The bus Hamiltonian H0, held as a bond list and applied matrix-free on any
/// Basis (full space or sector). Real symmetric in the product basis.
class HamiltonianOp {
 public:
  explicit HamiltonianOp(LadderSpec spec);

  const LadderSpec& spec() const noexcept { return spec_; }
  int rungs() const noexcept { return spec_.rungs; }
  std::size_t dimension() const noexcept { return std::size_t{1} << (2 * spec_.rungs); }
  const std::vector<Exchange>& terms() const noexcept { return terms_; }

  /// out = H in, both expressed in `basis`. S^z conservation keeps sector
  /// vectors inside their sector.
  void apply(const Basis& basis, const RVector& in, RVector& out) const;
  void apply(const Basis& basis, const CVector& in, CVector& out) const;

  RVector operator()(const Basis& basis, const RVector& in) const;
  CVector operator()(const Basis& basis, const CVector& in) const;

  double diagonal(State s) const;

  Eigen::MatrixXd dense(const Basis& basis) const;

  /// Gershgorin-type bound on the operator norm.
  double norm_bound() const;

 private:
  template <typename Vec>
  void apply_impl(const Basis& basis, const Vec& in, Vec& out) const;

  LadderSpec spec_;
  std::vector<Exchange> terms_;
};

HamiltonianOp build_hamiltonian(const LadderSpec& spec);

/// Intra-chain bonds touching a node's site (one for end rungs, two inside).
std::vector<Bond> incident_bonds(Node node, int rungs);

inline constexpr double kMaxFluctuation = 0.1;

/// Returns a spec whose bonds incident to m carry delta*(1+delta_m) and whose
/// bonds incident to n carry delta*(1+delta_n). Rung bonds are untouched.
LadderSpec apply_fluctuations(const LadderSpec& spec, Node m, double delta_m, Node n, double delta_n);

}  // namespace spinbus
