#include "spinbus/sweep/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <cctype>
#include <sstream>

namespace spinbus::sweep {

namespace {

constexpr std::array<std::pair<Command, const char*>, 8> kCommands{{
    {Command::spectrum, "spectrum"},
    {Command::fig1, "fig1"},
    {Command::fig2, "fig2"},
    {Command::fig3, "fig3"},
    {Command::gamma, "gamma"},
    {Command::gate_error, "gate-error"},
    {Command::adiabatic, "adiabatic"},
    {Command::validate, "validate"},
}};

std::string format_message(const std::string& source, int line, const std::string& message) {
  std::ostringstream out;
  out << source;
  if (line > 0) out << ":" << line;
  out << ": " << message;
  return out.str();
}

int line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Finds `"key"` used as an object key at or after `from`. Good enough for
// error reporting; JSON parsing itself is done by nlohmann.
std::size_t key_offset(std::string_view text, const std::string& key, std::size_t from = 0) {
  const std::string quoted = "\"" + key + "\"";
  for (auto pos = text.find(quoted, from); pos != std::string_view::npos; pos = text.find(quoted, pos + 1)) {
    auto after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return pos;
  }
  return std::string_view::npos;
}

class Reader {
 public:
  Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message, std::size_t from = 0) const {
    const auto off = key.empty() ? std::string_view::npos : key_offset(text_, key, from);
    throw ConfigError(source_, off == std::string_view::npos ? 0 : line_at(text_, off), message);
  }

  double number(const nlohmann::json& v, const std::string& key) const {
    if (!v.is_number()) fail(key, "'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(key, "'" + key + "' must be finite");
    return x;
  }

  int integer(const nlohmann::json& v, const std::string& key) const {
    if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
    return v.get<int>();
  }

  std::string string(const nlohmann::json& v, const std::string& key) const {
    if (!v.is_string()) fail(key, "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> grid(const nlohmann::json& v, const std::string& key) const {
    if (v.is_array()) {
      std::vector<double> out;
      for (const auto& x : v) out.push_back(number(x, key));
      return out;
    }
    if (!v.is_object()) fail(key, "'" + key + "' must be an array or {start, stop, step}");
    const auto from = key_offset(text_, key);
    Grid g;
    for (const auto& [k, x] : v.items()) {
      if (k == "start") g.start = number(x, k);
      else if (k == "stop") g.stop = number(x, k);
      else if (k == "step") g.step = number(x, k);
      else fail(k, "unknown grid field '" + k + "' in '" + key + "'", from == std::string_view::npos ? 0 : from);
    }
    for (const char* k : {"start", "stop", "step"}) {
      if (!v.contains(k)) fail(key, "grid '" + key + "' is missing '" + k + "'");
    }
    if (!(g.step > 0.0)) fail(key, "grid '" + key + "' needs a positive step");
    if (g.stop < g.start) fail(key, "grid '" + key + "' has stop < start");
    return g.values();
  }

  const std::string& source() const { return source_; }

 private:
  std::string_view text_;
  std::string source_;
};

}  // namespace

const char* command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (name == n) return cmd;
  }
  return std::nullopt;
}

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(format_message(source, line, message)), line_(line) {}

std::vector<double> Grid::values() const {
  std::vector<double> out;
  if (!(step > 0.0) || stop < start) return out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (std::abs(v - stop) < 1e-9 * step) v = stop;
    if (std::abs(v) < 1e-9 * step) v = 0.0;
    out.push_back(v);
  }
  return out;
}

nlohmann::json SweepConfig::echo() const {
  nlohmann::json overrides = nlohmann::json::array();
  for (const auto& [bond, d] : ladder.bond_overrides) {
    overrides.push_back({{"chain", bond.chain}, {"rung", bond.rung}, {"delta", d}});
  }
  nlohmann::json j = {
      {"command", command_name(command)},
      {"L", ladder.rungs},
      {"J", ladder.J},
      {"delta", ladder.delta},
      {"bond_overrides", overrides},
      {"m", m.value},
      {"n", n.value},
      {"J_A", J_A},
      {"J_B", J_B},
      {"backend", backend_name(backend)},
      {"jobs", jobs},
  };
  switch (command) {
    case Command::fig1: j["delta_grid"] = delta_grid; break;
    case Command::fig2: j["L_range"] = {L_min, L_max}; break;
    case Command::fig3: j["fluctuation_grid"] = fluctuation_grid; break;
    case Command::gate_error:
      j["delta_m"] = delta_m;
      j["delta_n"] = delta_n;
      break;
    default: break;
  }
  j["tolerances"] = {
      {"spectrum", tol.spectrum},
      {"oracle_relative", tol.oracle_relative},
      {"oracle_ratio", {tol.oracle_ratio_low, tol.oracle_ratio_high}},
      {"gate_distance", tol.gate_distance},
      {"swap_distance", tol.swap_distance},
      {"channel_infidelity", tol.channel_infidelity},
      {"adiabatic_scale", {tol.adiabatic_low, tol.adiabatic_high}},
  };
  return j;
}

SweepConfig default_config(Command c) {
  SweepConfig cfg;
  cfg.command = c;
  switch (c) {
    case Command::spectrum:
    case Command::gamma: cfg.ladder = {2, 1.0, 1.0, {}}; break;
    case Command::fig1:
      cfg.ladder = {2, 10.0, 1.0, {}};
      cfg.delta_grid = Grid{0.1, 1.0, 0.05}.values();
      break;
    case Command::fig2:
      cfg.ladder = {6, 10.0, 0.2, {}};
      cfg.backend = Backend::resolvent;
      break;
    case Command::fig3:
      cfg.ladder = {4, 10.0, 0.2, {}};
      cfg.fluctuation_grid = Grid{-0.005, 0.005, 0.0005}.values();
      break;
    case Command::gate_error:
      cfg.ladder = {4, 10.0, 0.2, {}};
      cfg.delta_m = 0.005;
      cfg.delta_n = 0.0;
      break;
    case Command::adiabatic:
      cfg.ladder = {2, 1.0, 1.0, {}};
      cfg.J_A = cfg.J_B = 0.1;
      break;
    case Command::validate:
      cfg.ladder = {2, 1.0, 1.0, {}};
      cfg.J_A = cfg.J_B = 0.01;
      break;
  }
  return cfg;
}

SweepConfig parse_config(Command c, std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, line_at(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  Reader rd(text, source);
  if (!doc.is_object()) throw ConfigError(source, 1, "config must be a JSON object");

  SweepConfig cfg = default_config(c);
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") {
      const auto named = parse_command(rd.string(v, key));
      if (!named) rd.fail(key, "unknown command '" + v.get<std::string>() + "'");
      if (*named != c) {
        rd.fail(key, std::string("config is for '") + command_name(*named) + "', not '" + command_name(c) + "'");
      }
    } else if (key == "L") {
      cfg.ladder.rungs = rd.integer(v, key);
    } else if (key == "J") {
      cfg.ladder.J = rd.number(v, key);
    } else if (key == "delta") {
      cfg.ladder.delta = rd.number(v, key);
    } else if (key == "bond_overrides") {
      if (!v.is_array()) rd.fail(key, "'bond_overrides' must be an array of {chain, rung, delta}");
      cfg.ladder.bond_overrides.clear();
      for (const auto& b : v) {
        if (!b.is_object() || !b.contains("chain") || !b.contains("rung") || !b.contains("delta")) {
          rd.fail(key, "each bond override needs chain, rung and delta");
        }
        const Bond bond{rd.integer(b["chain"], key), rd.integer(b["rung"], key)};
        if (!cfg.ladder.bond_overrides.emplace(bond, rd.number(b["delta"], key)).second) {
          rd.fail(key, "bond override listed twice");
        }
      }
    } else if (key == "m") {
      cfg.m = {rd.integer(v, key)};
    } else if (key == "n") {
      cfg.n = {rd.integer(v, key)};
    } else if (key == "J_A") {
      cfg.J_A = rd.number(v, key);
    } else if (key == "J_B") {
      cfg.J_B = rd.number(v, key);
    } else if (key == "delta_grid") {
      cfg.delta_grid = rd.grid(v, key);
    } else if (key == "L_range") {
      if (!v.is_array() || v.size() != 2) rd.fail(key, "'L_range' must be [first, last]");
      cfg.L_min = rd.integer(v[0], key);
      cfg.L_max = rd.integer(v[1], key);
    } else if (key == "fluctuation_grid") {
      cfg.fluctuation_grid = rd.grid(v, key);
    } else if (key == "delta_m") {
      cfg.delta_m = rd.number(v, key);
    } else if (key == "delta_n") {
      cfg.delta_n = rd.number(v, key);
    } else if (key == "backend") {
      try {
        cfg.backend = parse_backend(rd.string(v, key));
      } catch (const DomainError& e) {
        rd.fail(key, e.what());
      }
    } else if (key == "jobs") {
      cfg.jobs = rd.integer(v, key);
    } else if (key == "out") {
      cfg.out = rd.string(v, key);
    } else if (key == "tolerances") {
      if (!v.is_object()) rd.fail(key, "'tolerances' must be an object");
      for (const auto& [tk, tv] : v.items()) {
        if (tk == "spectrum") cfg.tol.spectrum = rd.number(tv, tk);
        else if (tk == "oracle_relative") cfg.tol.oracle_relative = rd.number(tv, tk);
        else if (tk == "gate_distance") cfg.tol.gate_distance = rd.number(tv, tk);
        else if (tk == "swap_distance") cfg.tol.swap_distance = rd.number(tv, tk);
        else if (tk == "channel_infidelity") cfg.tol.channel_infidelity = rd.number(tv, tk);
        else rd.fail(tk, "unknown tolerance '" + tk + "'");
      }
    } else {
      rd.fail(key, "unknown key '" + key + "'");
    }
  }

  validate(cfg, source, text);
  return cfg;
}

SweepConfig load_config(Command c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(c, buf.str(), path);
}

void validate(const SweepConfig& cfg, const std::string& source, std::string_view text) {
  // Cross-field errors point at the first of the named keys present in the text.
  const auto bad = [&](const std::string& msg, std::initializer_list<const char*> keys = {}) {
    for (const char* k : keys) {
      if (const auto off = key_offset(text, k); off != std::string_view::npos) {
        throw ConfigError(source, line_at(text, off), msg);
      }
    }
    throw ConfigError(source, 0, msg);
  };
  try {
    cfg.ladder.validate();
  } catch (const DomainError& e) {
    bad(e.what(), {"L", "J", "delta", "bond_overrides"});
  }
  if (cfg.m == cfg.n) bad("nodes m and n must differ", {"n", "m"});
  try {
    node_to_site(cfg.m, cfg.ladder.rungs);
  } catch (const DomainError& e) {
    bad(e.what(), {"m", "L"});
  }
  try {
    node_to_site(cfg.n, cfg.ladder.rungs);
  } catch (const DomainError& e) {
    bad(e.what(), {"n", "L"});
  }
  if (cfg.jobs < 1) bad("jobs must be at least 1", {"jobs"});
  const auto monotone = [](const std::vector<double>& g) {
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) return false;
    }
    return true;
  };
  switch (cfg.command) {
    case Command::fig1:
      if (cfg.delta_grid.empty() || !monotone(cfg.delta_grid)) bad("delta_grid must be non-empty and increasing", {"delta_grid"});
      for (double d : cfg.delta_grid) {
        if (!(d > 0.0 && d <= 1.0)) bad("delta_grid values must lie in (0, 1]", {"delta_grid"});
      }
      break;
    case Command::fig2:
      if (cfg.L_min < 2 || cfg.L_max < cfg.L_min || cfg.L_max > kMaxRungs) {
        bad("L_range must satisfy 2 <= first <= last <= " + std::to_string(kMaxRungs), {"L_range"});
      }
      break;
    case Command::fig3:
      if (cfg.fluctuation_grid.empty() || !monotone(cfg.fluctuation_grid)) {
        bad("fluctuation_grid must be non-empty and increasing", {"fluctuation_grid"});
      }
      for (double d : cfg.fluctuation_grid) {
        if (std::abs(d) > kMaxFluctuation) bad("fluctuation_grid values must satisfy |delta| <= 0.1", {"fluctuation_grid"});
      }
      break;
    case Command::gate_error:
      if (std::abs(cfg.delta_m) > kMaxFluctuation || std::abs(cfg.delta_n) > kMaxFluctuation) {
        bad("delta_m and delta_n must satisfy |delta| <= 0.1", {"delta_m", "delta_n"});
      }
      break;
    default: break;
  }
}

}  // namespace spinbus::sweep
