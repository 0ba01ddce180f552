// spinbus: sweeps and checks for the two-chain spin bus.
//
//   spinbus <spectrum|fig1|fig2|fig3|gamma|gate-error|adiabatic|validate>
//           [--config file.json] [--out path.csv] [--backend sum|resolvent] [--jobs N]
//
// Exit codes: 0 ok, 1 validation failed, 2 config error, 3 non-convergence.

#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "spinbus/sweep/commands.hpp"

using namespace spinbus;
using namespace spinbus::sweep;

namespace {

int run(Command command, const std::string& config_path, const std::string& out_flag,
        const std::string& backend_flag, int jobs_flag) {
  SweepConfig cfg = config_path.empty() ? default_config(command) : load_config(command, config_path);
  if (!backend_flag.empty()) {
    try {
      cfg.backend = parse_backend(backend_flag);
    } catch (const DomainError& e) {
      throw ConfigError("--backend", 0, e.what());
    }
  }
  if (jobs_flag > 0) cfg.jobs = jobs_flag;
  if (!out_flag.empty()) cfg.out = out_flag;
  validate(cfg, config_path.empty() ? "<defaults>" : config_path);

  const CommandResult result = run_command(cfg);
  for (const auto& note : result.notes) std::cerr << "spinbus: " << note << "\n";

  if (cfg.out.empty()) {
    for (const auto& t : result.tables) std::cout << t.to_csv();
  } else {
    for (std::size_t i = 0; i < result.tables.size(); ++i) {
      const auto path = i == 0 ? cfg.out : suffixed_path(cfg.out, result.tables[i].name());
      result.tables[i].write(path);
      std::cerr << "spinbus: wrote " << path << "\n";
    }
  }
  return result.passed ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective couplings, gates and error budgets for a two-chain spin bus"};
  app.set_version_flag("--version", SPINBUS_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_path, backend;
  int jobs = 0;
  for (const char* name : {"spectrum", "fig1", "fig2", "fig3", "gamma", "gate-error", "adiabatic", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config; defaults reproduce the reference settings")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    sub->add_option("--backend", backend, "sum | resolvent");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 1024));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const auto command = parse_command(app.get_subcommands().front()->get_name());
  try {
    return run(*command, config_path, out_path, backend, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "spinbus: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConvergenceError& e) {
    std::cerr << "spinbus: no convergence: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNonConvergence;
  } catch (const DomainError& e) {
    std::cerr << "spinbus: invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "spinbus: error: " << e.what() << "\n";
    return kConfigError;
  }
}
