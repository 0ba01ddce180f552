#include "spinbus/hilbert.hpp"

#include <bit>
#include <numeric>

namespace spinbus {

char axis_name(Axis a) {
  switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

Axis parse_axis(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::x;
    case 'y': case 'Y': return Axis::y;
    case 'z': case 'Z': return Axis::z;
    default: throw DomainError(std::string("unknown spin axis '") + c + "'");
  }
}

void validate_rungs(int rungs) {
  if (rungs < 1 || rungs > kMaxRungs) {
    throw DomainError("ladder length L=" + std::to_string(rungs) + " outside 1.." +
                      std::to_string(kMaxRungs));
  }
}

void validate_site(Site s, int rungs) {
  if (s.chain != 1 && s.chain != 2) {
    throw DomainError("chain index " + std::to_string(s.chain) + " not in {1,2}");
  }
  if (s.rung < 1 || s.rung > rungs) {
    throw DomainError("rung index " + std::to_string(s.rung) + " not in 1.." + std::to_string(rungs));
  }
}

Site node_to_site(Node n, int rungs) {
  validate_rungs(rungs);
  if (n.value < 1 || n.value > 2 * rungs) {
    throw DomainError("node " + std::to_string(n.value) + " not in 1.." + std::to_string(2 * rungs));
  }
  const int rung = (n.value + 1) / 2;
  const bool first_of_pair = (n.value % 2) == 1;
  const bool odd_rung = (rung % 2) == 1;
  const int chain = (first_of_pair == odd_rung) ? 1 : 2;
  return {chain, rung};
}

Node site_to_node(Site s, int rungs) {
  validate_rungs(rungs);
  validate_site(s, rungs);
  const bool odd_rung = (s.rung % 2) == 1;
  const bool first_of_pair = (s.chain == 1) == odd_rung;
  return {2 * s.rung - (first_of_pair ? 1 : 0)};
}

int total_sz(State s, int rungs) { return std::popcount(s) - rungs; }

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

Basis::Basis(int rungs, std::optional<int> sz, std::vector<State> states)
    : rungs_(rungs), sz_(sz), states_(std::move(states)),
      index_(std::size_t{1} << (2 * rungs), -1) {
  for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = static_cast<std::int32_t>(i);
}

Basis Basis::full(int rungs) {
  validate_rungs(rungs);
  std::vector<State> states(std::size_t{1} << (2 * rungs));
  std::iota(states.begin(), states.end(), State{0});
  return Basis(rungs, std::nullopt, std::move(states));
}

Basis Basis::sector(int rungs, int sz) {
  validate_rungs(rungs);
  if (sz < -rungs || sz > rungs) {
    throw DomainError("total S^z=" + std::to_string(sz) + " impossible for L=" + std::to_string(rungs));
  }
  std::vector<State> states;
  states.reserve(binomial(2 * rungs, rungs + sz));
  const State end = State{1} << (2 * rungs);
  for (State s = 0; s < end; ++s) {
    if (total_sz(s, rungs) == sz) states.push_back(s);
  }
  return Basis(rungs, sz, std::move(states));
}

std::vector<Basis> all_sectors(int rungs) {
  std::vector<Basis> out;
  for (int sz = -rungs; sz <= rungs; ++sz) out.push_back(Basis::sector(rungs, sz));
  return out;
}

CVector apply_spin(Site site, Axis axis, const CVector& v, const Basis& from, const Basis& to) {
  if (from.rungs() != to.rungs()) throw DomainError("apply_spin: bases of different ladders");
  validate_site(site, from.rungs());
  if (static_cast<std::size_t>(v.size()) != from.size()) {
    throw DomainError("apply_spin: vector of size " + std::to_string(v.size()) +
                      " does not match basis of size " + std::to_string(from.size()));
  }
  const State mask = State{1} << site_bit(site, from.rungs());
  CVector out = CVector::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Complex amp = v[static_cast<Eigen::Index>(i)];
    if (amp == Complex{}) continue;
    const State s = from.state(i);
    const bool up = (s & mask) != 0;
    State image = s;
    Complex factor;
    switch (axis) {
      case Axis::z: factor = up ? 0.5 : -0.5; break;
      case Axis::x: image = s ^ mask; factor = 0.5; break;
      // s^y = [[0,-i],[i,0]]/2 in the (up, down) basis.
      case Axis::y: image = s ^ mask; factor = up ? Complex{0, 0.5} : Complex{0, -0.5}; break;
    }
    const std::int64_t j = to.index(image);
    if (j < 0) throw DomainError("apply_spin: image state leaves the target basis");
    out[j] += factor * amp;
  }
  return out;
}

CVector apply_spin(Site site, Axis axis, const CVector& v, const Basis& basis) {
  return apply_spin(site, axis, v, basis, basis);
}

}  // namespace spinbus
