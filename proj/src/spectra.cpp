#include "spinbus/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace spinbus {

SpectrumResult::SpectrumResult(std::vector<SectorEigensystem> sectors) : sectors_(std::move(sectors)) {
  if (sectors_.empty()) throw DomainError("spectrum with no sectors");
  rungs_ = sectors_.front().basis.rungs();
  for (int s = 0; s < static_cast<int>(sectors_.size()); ++s) {
    const auto& block = sectors_[static_cast<std::size_t>(s)];
    for (int c = 0; c < static_cast<int>(block.values.size()); ++c) levels_.push_back({block.values[c], s, c});
  }
  std::stable_sort(levels_.begin(), levels_.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });
}

std::vector<double> SpectrumResult::eigenvalues() const {
  std::vector<double> out;
  out.reserve(levels_.size());
  for (const auto& l : levels_) out.push_back(l.energy);
  return out;
}

int SpectrumResult::sz(std::size_t k) const {
  return sectors_[static_cast<std::size_t>(levels_[k].sector)].basis.sz().value_or(0);
}

RVector SpectrumResult::local_vector(std::size_t k) const {
  const auto& l = levels_[k];
  return sectors_[static_cast<std::size_t>(l.sector)].vectors.col(l.column);
}

RVector SpectrumResult::full_vector(std::size_t k) const {
  const auto& l = levels_[k];
  return embed(RVector(local_vector(k)), sectors_[static_cast<std::size_t>(l.sector)].basis);
}

std::vector<std::pair<double, int>> SpectrumResult::multiplets(double tol) const {
  std::vector<std::pair<double, int>> out;
  for (const auto& l : levels_) {
    if (!out.empty() && std::abs(l.energy - out.back().first) <= tol * std::max(1.0, std::abs(out.back().first))) {
      ++out.back().second;
    } else {
      out.emplace_back(l.energy, 1);
    }
  }
  return out;
}

bool SpectrumResult::ground_is_degenerate(double tol) const { return multiplets(tol).front().second > 1; }

SpectrumResult full_spectrum(const HamiltonianOp& h, int max_rungs) {
  if (h.rungs() > max_rungs) {
    throw DomainError("full_spectrum: L=" + std::to_string(h.rungs()) + " exceeds the dense threshold L=" +
                      std::to_string(max_rungs) + "; use the iterative path (ground_and_gap / resolvent backend)");
  }
  std::vector<SectorEigensystem> blocks;
  for (auto& basis : all_sectors(h.rungs())) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense(basis));
    if (solver.info() != Eigen::Success) throw ConvergenceError("full_spectrum: dense eigensolver failed", NAN);
    blocks.push_back({std::move(basis), solver.eigenvalues(), solver.eigenvectors()});
  }
  return SpectrumResult(std::move(blocks));
}

namespace {

void fix_sign(RVector& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  if (v[at] < 0) v = -v;
}

struct SectorLow {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  double residual;
};

SectorLow lowest_in_sector(const HamiltonianOp& h, const Basis& basis, int wanted, std::size_t dense_limit,
                           const LanczosOptions& options) {
  if (basis.size() <= dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense(basis));
    const int got = std::min<int>(wanted, static_cast<int>(basis.size()));
    return {solver.eigenvalues().head(got), solver.eigenvectors().leftCols(got), 0.0};
  }
  LanczosOptions opt = options;
  opt.wanted = wanted;
  const auto op = [&](const RVector& in, RVector& out) { h.apply(basis, in, out); };
  auto res = lanczos_lowest(op, static_cast<Eigen::Index>(basis.size()), h.norm_bound(), opt);
  return {res.values, res.vectors, res.residuals.maxCoeff()};
}

}  // namespace

GroundState ground_and_gap(const HamiltonianOp& h, std::size_t dense_limit, const LanczosOptions& options) {
  const int L = h.rungs();
  const Basis zero = Basis::sector(L, 0);
  const auto low = lowest_in_sector(h, zero, 2, dense_limit, options);
  double first_excited = low.values.size() > 1 ? low.values[1] : INFINITY;
  double residual = low.residual;
  for (const int sz : {-1, 1}) {
    const auto other = lowest_in_sector(h, Basis::sector(L, sz), 1, dense_limit, options);
    first_excited = std::min(first_excited, other.values[0]);
    residual = std::max(residual, other.residual);
  }
  RVector local = low.vectors.col(0);
  local.normalize();
  fix_sign(local);
  return {low.values[0], embed(local, zero), first_excited - low.values[0], residual};
}

GroundState ground_and_gap(const SpectrumResult& spectrum) {
  RVector psi = spectrum.full_vector(0);
  fix_sign(psi);
  const auto groups = spectrum.multiplets();
  const double gap = groups.front().second > 1 ? 0.0 : groups.at(1).first - groups.front().first;
  return {spectrum.energy(0), psi, gap, 0.0};
}

double gap_estimate(int rungs, double J, double C) {
  return 0.5 * J + C * J * std::exp(-0.25 * rungs) / rungs;
}

GapFit fit_gap_constant(const std::vector<int>& rungs, const std::vector<double>& gaps, double J) {
  if (rungs.size() != gaps.size() || rungs.empty()) throw DomainError("fit_gap_constant: mismatched samples");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double f = J * std::exp(-0.25 * rungs[i]) / rungs[i];
    num += f * (gaps[i] - 0.5 * J);
    den += f * f;
  }
  GapFit fit{num / den, {}};
  for (std::size_t i = 0; i < rungs.size(); ++i) fit.residuals.push_back(gaps[i] - gap_estimate(rungs[i], J, fit.C));
  return fit;
}

CubicRoots cubic_roots(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("cubic_roots: delta outside (0,1]");
  const double u = 1.0 - delta;
  const double b = 0.5 * (1.0 + delta);
  const double c = -(2.0 + 0.25 * u * u);
  const double d = -0.125 * u * u * (1.0 + delta);
  const auto poly = [&](double x) { return ((x + b) * x + c) * x + d; };
  const auto deriv = [&](double x) { return (3.0 * x + 2.0 * b) * x + c; };

  // Trigonometric form for three real roots of the depressed cubic.
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  if (!(p < 0.0)) {
    std::ostringstream msg;
    msg << "cubic_roots: no three real roots (p=" << p << ", q=" << q << ", delta=" << delta << ")";
    throw std::runtime_error(msg.str());
  }
  double arg = 1.5 * q / p * std::sqrt(-3.0 / p);
  if (std::abs(arg) > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "cubic_roots: complex roots (acos argument " << arg << ", delta=" << delta << ")";
    throw std::runtime_error(msg.str());
  }
  arg = std::clamp(arg, -1.0, 1.0);
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double phi = std::acos(arg) / 3.0;
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k) {
    double x = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0;
    for (int it = 0; it < 3; ++it) {
      const double dp = deriv(x);
      if (dp == 0.0) break;
      x -= poly(x) / dp;
    }
    roots[static_cast<std::size_t>(k)] = x;
  }
  std::sort(roots.begin(), roots.end());
  return {roots[0], roots[1], roots[2]};
}

State l2_display_ket(const char* spins) {
  // Display positions: s_{1,1}, s_{1,2}, s_{2,2}, s_{2,1}.
  static constexpr std::array<Site, 4> kDisplay{{{1, 1}, {1, 2}, {2, 2}, {2, 1}}};
  State s = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const char c = spins[i];
    if (c != 'u' && c != 'd') throw DomainError("l2_display_ket: expected 4 characters of u/d");
    if (c == 'u') s |= State{1} << site_bit(kDisplay[i], 2);
  }
  if (spins[4] != '\0') throw DomainError("l2_display_ket: expected 4 characters of u/d");
  return s;
}

namespace {

RVector ket_combination(std::initializer_list<std::pair<double, const char*>> terms) {
  RVector v = RVector::Zero(16);
  for (const auto& [coeff, ket] : terms) v[l2_display_ket(ket)] += coeff;
  return v;
}

}  // namespace

AnalyticL2 analytic_spectrum_l2(double delta, double J) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("analytic_spectrum_l2: delta outside (0,1]");
  if (!(J > 0.0)) throw DomainError("analytic_spectrum_l2: J must be positive");
  AnalyticL2 out;
  out.roots = cubic_roots(delta);
  const double h = 0.5 * (1.0 - delta);
  const std::array<double, 3> etas{out.roots.low, out.roots.mid, out.roots.high};
  for (std::size_t f = 0; f < 3; ++f) {
    const double eta = etas[f];
    if (std::abs(eta + h) < 1e-12 && std::abs(eta - h) < 1e-12) {
      // delta = 1, eta = 0: the closed form is 0/0; limiting coefficients.
      out.coefficients[f] = {0.0, 0.5, -0.5};
      continue;
    }
    // Scaled to avoid dividing by eta +- h near delta = 1.
    double a = (eta + h) * (eta - h);
    double b = eta - h;
    double c = eta + h;
    const double norm = std::sqrt(2.0 * (a * a + b * b + c * c));
    const double sign = a < 0 ? -1.0 : 1.0;
    out.coefficients[f] = {sign * a / norm, sign * b / norm, sign * c / norm};
  }

  const auto symmetric = [&](std::size_t f) {
    const auto& k = out.coefficients[f];
    return ket_combination({{k.a, "dudu"}, {k.a, "udud"}, {k.b, "dduu"}, {k.b, "uudd"}, {k.c, "duud"}, {k.c, "uddu"}});
  };
  const double s2 = 1.0 / std::sqrt(2.0);
  auto add = [&](int label, int component, double energy, RVector v) {
    out.levels.push_back({label, component, energy, std::move(v)});
  };
  add(0, 0, J * etas[0], symmetric(0));
  add(1, 0, -J, ket_combination({{0.5, "duuu"}, {-0.5, "uduu"}, {0.5, "uudu"}, {-0.5, "uuud"}}));
  add(1, 1, -J, ket_combination({{0.5, "uddd"}, {-0.5, "dudd"}, {0.5, "ddud"}, {-0.5, "dddu"}}));
  add(2, 0, -0.5 * J * (1.0 + delta), ket_combination({{s2, "dudu"}, {-s2, "udud"}}));
  add(3, 0, -0.5 * J * (1.0 - delta), ket_combination({{s2, "dduu"}, {-s2, "uudd"}}));
  add(4, 0, J * etas[1], symmetric(1));
  add(5, 0, 0.0, ket_combination({{0.5, "duuu"}, {0.5, "uduu"}, {-0.5, "uudu"}, {-0.5, "uuud"}}));
  add(5, 1, 0.0, ket_combination({{0.5, "duuu"}, {-0.5, "uduu"}, {-0.5, "uudu"}, {0.5, "uuud"}}));
  add(5, 2, 0.0, ket_combination({{0.5, "uddd"}, {0.5, "dudd"}, {-0.5, "ddud"}, {-0.5, "dddu"}}));
  add(5, 3, 0.0, ket_combination({{0.5, "uddd"}, {-0.5, "dudd"}, {-0.5, "ddud"}, {0.5, "dddu"}}));
  add(6, 0, 0.5 * J * (1.0 - delta), ket_combination({{s2, "duud"}, {-s2, "uddu"}}));
  add(7, 0, 0.5 * J * (1.0 + delta), ket_combination({{1.0, "dddd"}}));
  add(7, 1, 0.5 * J * (1.0 + delta), ket_combination({{1.0, "uuuu"}}));
  add(8, 0, J, ket_combination({{0.5, "duuu"}, {0.5, "uduu"}, {0.5, "uudu"}, {0.5, "uuud"}}));
  add(8, 1, J, ket_combination({{0.5, "uddd"}, {0.5, "dudd"}, {0.5, "ddud"}, {0.5, "dddu"}}));
  add(9, 0, J * etas[2], symmetric(2));
  return out;
}

}  // namespace spinbus
