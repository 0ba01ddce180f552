#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinbus/effective.hpp"

namespace spinbus::sweep {

enum class Command { spectrum, fig1, fig2, fig3, gamma, gate_error, adiabatic, validate };

const char* command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Config problems carry the 1-based source line when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Inclusive arithmetic grid start, start+step, ..., stop. Values are
/// computed as start + i*step so no rounding drift accumulates.
struct Grid {
  double start = 0, stop = 0, step = 1;
  std::vector<double> values() const;
};

struct Tolerances {
  double spectrum = 1e-10;
  double oracle_relative = 0.05;
  double oracle_ratio_low = 2.0;
  double oracle_ratio_high = 8.0;
  double gate_distance = 1e-8;
  double swap_distance = 1e-10;
  double channel_infidelity = 1e-3;
  double adiabatic_low = 100.0;
  double adiabatic_high = 200.0;
};

struct SweepConfig {
  Command command = Command::spectrum;
  LadderSpec ladder{2, 1.0, 1.0, {}};
  Node m{1}, n{2};
  double J_A = 1.0, J_B = 1.0;
  std::vector<double> delta_grid;        // fig1
  int L_min = 2, L_max = 6;              // fig2 L-sweep
  std::vector<double> fluctuation_grid;  // fig3
  double delta_m = 0.0, delta_n = 0.0;   // gate-error
  Backend backend = Backend::spectrum_sum;
  int jobs = 1;
  std::string out;
  Tolerances tol;

  /// Effective settings, echoed into result metadata.
  nlohmann::json echo() const;
};

/// Built-in defaults per command (the reference figure settings).
SweepConfig default_config(Command c);

/// Overlays a JSON document on the command defaults. Unknown keys, wrong types
/// and invalid values raise ConfigError naming the offending line.
SweepConfig parse_config(Command c, std::string_view text, const std::string& source = "<config>");
SweepConfig load_config(Command c, const std::string& path);

/// Cross-field checks (grids non-empty and monotone, nodes in range, ...).
/// `text` is the source document, used only to locate the offending line.
void validate(const SweepConfig& config, const std::string& source = "<config>", std::string_view text = {});

}  // namespace spinbus::sweep
