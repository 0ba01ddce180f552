#pragma once

#include <array>
#include <vector>

#include "spinbus/krylov.hpp"
#include "spinbus/ladder.hpp"

namespace spinbus {

/// Dense eigensystem of one S^z sector.
struct SectorEigensystem {
  Basis basis;
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns in the sector basis
};

/// Reference to one eigenpair of a sector-blocked spectrum.
struct Level {
  double energy;
  int sector;  // index into SpectrumResult::sectors()
  int column;
};

/// Complete, sector-tagged eigen-decomposition ordered by energy.
class SpectrumResult {
 public:
  explicit SpectrumResult(std::vector<SectorEigensystem> sectors);

  int rungs() const noexcept { return rungs_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<SectorEigensystem>& sectors() const noexcept { return sectors_; }

  std::vector<double> eigenvalues() const;
  double energy(std::size_t k) const { return levels_[k].energy; }
  int sz(std::size_t k) const;

  /// Eigenvector of level k in its own sector basis.
  RVector local_vector(std::size_t k) const;
  /// Eigenvector of level k embedded in the full 4^L space.
  RVector full_vector(std::size_t k) const;

  /// Levels grouped by |e_a - e_b| <= tol * max(1, |e_a|); returns the
  /// multiplicity of each distinct energy in ascending order.
  std::vector<std::pair<double, int>> multiplets(double tol = kDegeneracyTolerance) const;

  bool ground_is_degenerate(double tol = kDegeneracyTolerance) const;

  static constexpr double kDegeneracyTolerance = 1e-9;

 private:
  int rungs_;
  std::vector<SectorEigensystem> sectors_;
  std::vector<Level> levels_;
};

inline constexpr int kDefaultDenseRungs = 6;

/// Dense diagonalization of every S^z sector. Throws DomainError when L
/// exceeds `max_rungs`; larger ladders go through ground_and_gap.
SpectrumResult full_spectrum(const HamiltonianOp& h, int max_rungs = kDefaultDenseRungs);

struct GroundState {
  double energy;
  RVector vector;  // full 4^L space, real, unit norm
  double gap;      // e1 - e0 over all sectors
  double residual;
};

/// Ground state from the S^z=0 sector and the gap from sectors 0 and +-1.
/// Uses dense blocks up to `dense_limit` and Lanczos above.
GroundState ground_and_gap(const HamiltonianOp& h, std::size_t dense_limit = 1000,
                           const LanczosOptions& options = {});

/// Ground state and gap read off a complete spectrum.
GroundState ground_and_gap(const SpectrumResult& spectrum);

/// Closed-form bus gap  J/2 + C J exp(-L/4) / L.
double gap_estimate(int rungs, double J, double C);

struct GapFit {
  double C;
  std::vector<double> residuals;
};

/// Least-squares C for gap_estimate against measured gaps.
GapFit fit_gap_constant(const std::vector<int>& rungs, const std::vector<double>& gaps, double J);

// ---------------------------------------------------------------------------
// Exact L=2 solution.

struct CubicRoots {
  double low, mid, high;
};

/// Ascending real roots of
///   eta^3 + (1+D)/2 eta^2 - [2 + (1-D)^2/4] eta - (1-D)^2 (1+D)/8 = 0.
CubicRoots cubic_roots(double delta);

struct L2Coefficients {
  double a, b, c;
};

struct AnalyticLevel {
  int label;       // 0..9, the level index of the closed-form table
  int component;   // position inside a degenerate label
  double energy;
  RVector vector;  // 16 entries, canonical bit order
};

struct AnalyticL2 {
  CubicRoots roots;
  std::array<L2Coefficients, 3> coefficients;
  std::vector<AnalyticLevel> levels;  // 16 entries, table order
};

AnalyticL2 analytic_spectrum_l2(double delta, double J);

/// Canonical bitmask of an L=2 ket written in display order
/// |s_{1,1} s_{1,2} s_{2,2} s_{2,1}>, e.g. "udud".
State l2_display_ket(const char* spins);

}  // namespace spinbus
