#include "spinbus/sweep/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "spinbus/oracle.hpp"
#include "spinbus/sweep/parallel.hpp"

namespace spinbus::sweep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double as_double(int v) { return static_cast<double>(v); }

LadderSpec with(const LadderSpec& base, int rungs, double delta) {
  LadderSpec s = base;
  s.rungs = rungs;
  s.delta = delta;
  return s;
}

}  // namespace

CommandResult cmd_spectrum(const SweepConfig& cfg) {
  const auto h = build_hamiltonian(cfg.ladder);
  const auto spectrum = full_spectrum(h);
  const bool analytic = cfg.ladder.rungs == 2 && cfg.ladder.bond_overrides.empty();

  std::vector<std::string> columns{"k", "energy", "sz"};
  std::vector<double> reference;
  if (analytic) {
    columns.insert(columns.end(), {"analytic", "analytic_minus_numeric"});
    for (const auto& level : analytic_spectrum_l2(cfg.ladder.delta, cfg.ladder.J).levels) {
      reference.push_back(level.energy);
    }
    std::sort(reference.begin(), reference.end());
  }
  CommandResult out;
  ResultTable table("spectrum", columns);
  double worst = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    std::vector<Cell> row{static_cast<double>(k), spectrum.energy(k), as_double(spectrum.sz(k))};
    if (analytic) {
      const double diff = reference[k] - spectrum.energy(k);
      worst = std::max(worst, std::abs(diff));
      row.insert(row.end(), {reference[k], diff});
    }
    table.add_row(std::move(row));
  }
  if (analytic) {
    table.metadata()["max_analytic_deviation"] = worst;
    if (worst > cfg.tol.spectrum) {
      out.passed = false;
      out.notes.push_back("analytic L=2 spectrum deviates by " + format_number(worst));
    }
  }
  out.tables.push_back(std::move(table));
  return out;
}

CommandResult cmd_fig1(const SweepConfig& cfg) {
  const auto rows = parallel_map(cfg.delta_grid.size(), cfg.jobs, [&](std::size_t i) {
    return compute_coupling(with(cfg.ladder, cfg.ladder.rungs, cfg.delta_grid[i]), cfg.m, cfg.n, cfg.J_A, cfg.J_B,
                            cfg.backend);
  });
  ResultTable table("fig1", {"delta", "gamma_x", "gamma_y", "gamma_z", "delta_eff", "exchange_x"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& c = rows[i];
    table.add_row({cfg.delta_grid[i], c.gamma_x, c.gamma_y, c.gamma_z, c.delta_eff, c.exchange(Axis::x)});
  }
  CommandResult out;
  out.tables.push_back(std::move(table));
  return out;
}

CommandResult cmd_fig2(const SweepConfig& cfg) {
  CommandResult out;

  const auto profile = antiferro_ferro_profile(cfg.ladder, cfg.m, cfg.J_A, cfg.J_B, cfg.backend);
  ResultTable prof("profile", {"n", "distance", "gamma_x", "abs_gamma_x", "exchange_x", "sign"});
  bool alternates = true;
  for (const auto& e : profile) {
    const double sign = e.gamma_x > 0 ? 1.0 : -1.0;
    if (e.distance > 0 && sign != (e.distance % 2 == 1 ? 1.0 : -1.0)) alternates = false;
    prof.add_row({as_double(e.n.value), as_double(e.distance), e.gamma_x, std::abs(e.gamma_x), e.exchange_x, sign});
  }
  prof.metadata()["sign_alternates"] = alternates;
  if (!alternates) out.notes.push_back("fig2: gamma^x sign does not alternate with the parity of the distance");

  std::vector<int> lengths;
  for (int L = cfg.L_min; L <= cfg.L_max; ++L) lengths.push_back(L);
  const auto couplings = parallel_map(lengths.size(), cfg.jobs, [&](std::size_t i) {
    return compute_coupling(with(cfg.ladder, lengths[i], cfg.ladder.delta), cfg.m, cfg.n, cfg.J_A, cfg.J_B,
                            cfg.backend);
  });
  ResultTable sweep("lsweep", {"L", "gamma_x", "exchange_x", "increment", "gap"});
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    const double jx = couplings[i].exchange(Axis::x);
    const double inc = i == 0 ? kNaN : jx - couplings[i - 1].exchange(Axis::x);
    sweep.add_row({as_double(lengths[i]), couplings[i].gamma_x, jx, inc, couplings[i].gap});
  }
  out.tables.push_back(std::move(prof));
  out.tables.push_back(std::move(sweep));
  return out;
}

CommandResult cmd_fig3(const SweepConfig& cfg) {
  const auto& grid = cfg.fluctuation_grid;
  const std::size_t N = grid.size();
  const auto base = compute_coupling(cfg.ladder, cfg.m, cfg.n, cfg.J_A, cfg.J_B, cfg.backend);
  const auto reports = parallel_map(N * N, cfg.jobs, [&](std::size_t k) {
    const double dm = grid[k / N];
    const double dn = grid[k % N];
    const auto spec = apply_fluctuations(cfg.ladder, cfg.m, dm, cfg.n, dn);
    return gate_error(base, compute_coupling(spec, cfg.m, cfg.n, cfg.J_A, cfg.J_B, cfg.backend), dm, dn);
  });

  ResultTable table("fig3", {"delta_m", "delta_n", "delta_x", "delta_z", "n_formula", "n_direct", "n_direct_raw",
                             "log10_n_formula"});
  double max_formula = 0.0;
  double worst_relative = 0.0;
  std::size_t disagreements = 0;
  std::size_t compared = 0;
  for (const auto& r : reports) {
    const double lg = r.n_formula > 0.0 ? std::log10(r.n_formula) : -kInf;
    table.add_row({r.delta_m, r.delta_n, r.delta_x, r.delta_z, r.n_formula, r.n_direct, r.n_direct_raw, lg});
    max_formula = std::max(max_formula, r.n_formula);
    if (r.n_formula > 1e-7) {
      ++compared;
      const double rel = std::abs(r.n_direct - r.n_formula) / r.n_formula;
      worst_relative = std::max(worst_relative, rel);
      if (rel > 0.1) ++disagreements;
    }
  }
  CommandResult out;
  table.metadata()["max_n_formula"] = max_formula;
  table.metadata()["max_relative_direct_vs_formula"] = worst_relative;
  table.metadata()["t_c"] = coupling_time(base.gamma_x, cfg.J_A, cfg.J_B);
  if (disagreements > 0) {
    std::ostringstream msg;
    msg << "convention diagnostic: n_direct (global phase minimized) differs from the closed form by more than 10% on "
        << disagreements << " of " << compared << " points (worst " << worst_relative
        << "); the closed form assumes the phase convention of the x-dominant regime";
    out.notes.push_back(msg.str());
    table.metadata()["convention_diagnostic"] = msg.str();
  }
  out.tables.push_back(std::move(table));
  return out;
}

CommandResult cmd_gamma(const SweepConfig& cfg) {
  const auto c = compute_coupling(cfg.ladder, cfg.m, cfg.n, cfg.J_A, cfg.J_B, cfg.backend);
  ResultTable table("gamma", {"m", "n", "axis", "gamma_mn", "gamma_mm", "gamma_nn", "exchange"});
  for (std::size_t i = 0; i < kAxes.size(); ++i) {
    const Axis a = kAxes[i];
    table.add_row({as_double(c.m.value), as_double(c.n.value), std::string(1, axis_name(a)), c.gamma(a), c.self_m[i],
                   c.self_n[i], c.exchange(a)});
  }
  table.metadata()["c_eff"] = c.c_eff;
  table.metadata()["delta_eff"] = c.delta_eff;
  table.metadata()["ground_energy"] = c.ground_energy;
  table.metadata()["gap"] = c.gap;
  CommandResult out;
  out.tables.push_back(std::move(table));
  return out;
}

CommandResult cmd_gate_error(const SweepConfig& cfg) {
  const auto r = gate_error(cfg.ladder, cfg.m, cfg.n, cfg.delta_m, cfg.delta_n, cfg.J_A, cfg.J_B, cfg.backend);
  ResultTable table("gate_error", {"delta_m", "delta_n", "delta_x", "delta_z", "n_formula", "n_direct",
                                   "n_direct_raw", "t_c", "gamma_x0", "gamma_z0", "gamma_x", "gamma_z"});
  table.add_row({r.delta_m, r.delta_n, r.delta_x, r.delta_z, r.n_formula, r.n_direct, r.n_direct_raw, r.t_c,
                 r.gamma_x0, r.gamma_z0, r.gamma_x, r.gamma_z});
  CommandResult out;
  out.tables.push_back(std::move(table));
  return out;
}

CommandResult cmd_adiabatic(const SweepConfig& cfg) {
  const auto r = adiabatic_check(cfg.ladder, cfg.m, cfg.n, cfg.J_A, cfg.J_B, cfg.backend);
  ResultTable table("adiabatic", {"gate_time", "gap", "product", "bulk_product", "threshold", "scale", "pass"});
  table.add_row({r.gate_time, r.gap, r.product, r.bulk_product, 2.0 * kPi, r.scale, r.pass ? 1.0 : 0.0});
  CommandResult out;
  out.passed = r.pass;
  if (!r.pass) out.notes.push_back("adiabatic criterion fails: gate time times gap is not above 2 pi");
  out.tables.push_back(std::move(table));
  return out;
}

CommandResult cmd_validate(const SweepConfig& cfg) {
  CommandResult out;
  ResultTable table("validate", {"check", "measured", "lower", "upper", "pass"});
  const auto check = [&](const std::string& name, double value, double lo, double hi) {
    const bool ok = value >= lo && value <= hi;
    table.add_row({name, value, lo, hi, ok ? 1.0 : 0.0});
    if (!ok) {
      out.passed = false;
      out.notes.push_back("validate: " + name + " = " + format_number(value) + " outside [" + format_number(lo) +
                          ", " + format_number(hi) + "]");
    }
  };
  const auto& t = cfg.tol;
  const double J = cfg.ladder.J;

  const auto full = validate_effective_spectrum(cfg.ladder, cfg.m, cfg.n, cfg.J_A, cfg.J_B, cfg.backend);
  const auto half =
      validate_effective_spectrum(cfg.ladder, cfg.m, cfg.n, 0.5 * cfg.J_A, 0.5 * cfg.J_B, cfg.backend);
  check("oracle_relative_splitting", full.relative_error, 0.0, t.oracle_relative);
  check("oracle_scaling_ratio", full.relative_error / half.relative_error, t.oracle_ratio_low, t.oracle_ratio_high);
  check("oracle_level_separation_over_gap", full.separation / full.bus_gap, 0.5, kInf);
  if (full.level_crossing) out.notes.push_back(full.diagnostic);

  const double gx = full.coupling.gamma_x;
  const double gz = full.coupling.gamma_z;
  check("cpf_distance", distance_up_to_phase(cpf(gx, gz, cfg.J_A, cfg.J_B), canonical_cpf()), 0.0, t.gate_distance);
  check("cnot_distance", distance_up_to_phase(cnot(gx, gz, cfg.J_A, cfg.J_B), canonical_cnot()), 0.0,
        t.gate_distance);
  check("swap_distance", distance_up_to_phase(swap_gate(gx, cfg.J_A, cfg.J_B), canonical_swap()), 0.0,
        t.swap_distance);
  // Reported only: the two-collective-rotation form without refocusing.
  check("unrefocused_cpf_distance",
        distance_up_to_phase(cpf_sequence_unrefocused(gx, gz, cfg.J_A, cfg.J_B), canonical_cpf()), -kInf, kInf);

  const auto adiabatic = adiabatic_check(cfg.ladder, cfg.m, cfg.n, 0.1 * J, 0.1 * J, cfg.backend);
  check("adiabatic_scale", adiabatic.scale, t.adiabatic_low, t.adiabatic_high);
  check("adiabatic_product_over_2pi", adiabatic.product / (2.0 * kPi), 1.0, kInf);

  const auto channel = single_qubit_channel(cfg.ladder, cfg.m, 0.01 * J, Axis::x, kPi / 2, 0.05 * J);
  check("single_qubit_infidelity", channel.infidelity(), 0.0, t.channel_infidelity);

  out.tables.push_back(std::move(table));
  return out;
}

CommandResult run_command(const SweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult out;
  switch (cfg.command) {
    case Command::spectrum: out = cmd_spectrum(cfg); break;
    case Command::fig1: out = cmd_fig1(cfg); break;
    case Command::fig2: out = cmd_fig2(cfg); break;
    case Command::fig3: out = cmd_fig3(cfg); break;
    case Command::gamma: out = cmd_gamma(cfg); break;
    case Command::gate_error: out = cmd_gate_error(cfg); break;
    case Command::adiabatic: out = cmd_adiabatic(cfg); break;
    case Command::validate: out = cmd_validate(cfg); break;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& table : out.tables) {
    auto& meta = table.metadata();
    meta["tool"] = "spinbus";
    meta["version"] = SPINBUS_VERSION;
    meta["config"] = cfg.echo();
    meta["passed"] = out.passed;
    meta["elapsed_seconds"] = elapsed;
  }
  return out;
}

std::string suffixed_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const auto ext = p.extension().string();
  p.replace_filename(p.stem().string() + "_" + suffix + ext);
  return p.string();
}

}  // namespace spinbus::sweep
