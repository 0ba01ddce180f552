#pragma once

// Product basis, S^z sectors and single-site spin operators for a two-leg
// spin-1/2 ladder of L rungs (2L sites).
//
// Canonical site order is chain-major: bit (chain-1)*L + (rung-1). A set bit
// is spin up. Basis states are the occupation bitmasks themselves, so the full
// space is indexed by the bitmask value.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinbus {

using Complex = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

/// Raised when an argument is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by iterative solvers that fail to reach their tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

enum class Axis { x, y, z };
inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

char axis_name(Axis a);
Axis parse_axis(char c);

// Largest ladder the bitmask/index tables are sized for.
inline constexpr int kMaxRungs = 10;

struct Site {
  int chain = 1;  // 1 or 2
  int rung = 1;   // 1..L
  friend auto operator<=>(const Site&, const Site&) = default;
};

/// Connecting-node label 1..2L along the snake path over the ladder.
struct Node {
  int value = 1;
  friend auto operator<=>(const Node&, const Node&) = default;
};

void validate_rungs(int rungs);
void validate_site(Site s, int rungs);

/// Snake ordering: nodes 2k-1 and 2k sit on rung k; odd rungs run chain
/// 1 -> 2, even rungs run chain 2 -> 1. For L=2 this gives
/// 1=(1,1), 2=(2,1), 3=(2,2), 4=(1,2).
Site node_to_site(Node n, int rungs);
Node site_to_node(Site s, int rungs);

inline int site_bit(Site s, int rungs) { return (s.chain - 1) * rungs + (s.rung - 1); }

using State = std::uint32_t;

/// Total S^z of a basis state; for 2L spins this is popcount - L, an integer.
int total_sz(State s, int rungs);

/// An ordered set of basis states: either the full 4^L space or one S^z
/// sector. Members are sorted ascending by bitmask.
class Basis {
 public:
  static Basis full(int rungs);
  static Basis sector(int rungs, int total_sz);

  int rungs() const noexcept { return rungs_; }
  int sites() const noexcept { return 2 * rungs_; }
  std::optional<int> sz() const noexcept { return sz_; }
  std::size_t size() const noexcept { return states_.size(); }
  State state(std::size_t i) const { return states_[i]; }
  std::span<const State> states() const noexcept { return states_; }

  /// Position of a bitmask in this basis, or -1 when absent.
  std::int64_t index(State s) const noexcept {
    return s < index_.size() ? index_[s] : -1;
  }
  bool contains(State s) const noexcept { return index(s) >= 0; }

 private:
  Basis(int rungs, std::optional<int> sz, std::vector<State> states);

  int rungs_;
  std::optional<int> sz_;
  std::vector<State> states_;
  std::vector<std::int32_t> index_;
};

/// All S^z sectors of an L-rung ladder, from -L to +L.
std::vector<Basis> all_sectors(int rungs);

/// Binomial coefficient, exact for the sizes used here.
std::size_t binomial(int n, int k);

/// Applies s^axis (Pauli/2) at `site` to a vector expressed in `from`,
/// producing a vector expressed in `to`. Throws DomainError on a size mismatch
/// or when the image leaves `to`.
CVector apply_spin(Site site, Axis axis, const CVector& v, const Basis& from, const Basis& to);

/// Same-basis form; for a sector basis only the z axis is closed.
CVector apply_spin(Site site, Axis axis, const CVector& v, const Basis& basis);

/// Embeds a sector-local vector into the full 4^L space.
template <typename Vec>
Vec embed(const Vec& local, const Basis& basis) {
  Vec out = Vec::Zero(static_cast<Eigen::Index>(std::size_t{1} << basis.sites()));
  for (std::size_t i = 0; i < basis.size(); ++i) out[basis.state(i)] = local[static_cast<Eigen::Index>(i)];
  return out;
}

}  // namespace spinbus
