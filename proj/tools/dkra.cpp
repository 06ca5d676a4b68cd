// dkra — double-kicked rotor ratchet accelerator simulator CLI.
//
// One subcommand per output family: evolve (quantum current series),
// classical (ensemble current series), portrait (phase-space points),
// rate (fitted acceleration rates), scan (parameter grids), beta
// (quasi-momentum-averaged series). Flags mirror config-file keys; flags
// win over the file.

#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dkra/config.hpp"
#include "dkra/io.hpp"
#include "dkra/version.hpp"

namespace {

using nlohmann::json;

// Each passed flag lands in the overrides object after parsing, so the
// config layering (defaults < file < flags) happens in one place.
struct FlagTable {
  json overrides = json::object();
  std::string config_path;
  std::vector<std::function<void()>> collectors;

  template <typename T>
  void add(CLI::App* cmd, const std::string& key, const std::string& help) {
    auto holder = std::make_shared<T>();
    CLI::Option* opt = cmd->add_option("--" + key, *holder, help);
    collectors.push_back([this, key, holder, opt] {
      if (opt->count() > 0) overrides[key] = *holder;
    });
  }

  void collect() {
    for (auto& fn : collectors) fn();
  }
};

void add_common_flags(FlagTable& flags, CLI::App* cmd) {
  cmd->add_option("--config", flags.config_path,
                  "JSON config file (a metadata sidecar also works)");
  flags.add<double>(cmd, "k_tilde", "kick amplitude K");
  flags.add<double>(cmd, "l_tilde", "kick amplitude L");
  flags.add<double>(cmd, "hbar_tilde", "effective Planck constant");
  flags.add<double>(cmd, "phi", "phase shift between the kicks");
  flags.add<int>(cmd, "nu", "resonance order numerator");
  flags.add<int>(cmd, "mu", "resonance order denominator");
  flags.add<double>(cmd, "beta", "quasi-momentum in [0,1)");
  flags.add<int>(cmd, "n0", "initial momentum level");
  flags.add<int>(cmd, "basis", "momentum basis size (power of 2)");
  flags.add<int>(cmd, "basis_max", "auto-doubling cap");
  flags.add<int>(cmd, "guard_interval", "steps between truncation checks");
  flags.add<int>(cmd, "steps", "kick periods to evolve");
  flags.add<int>(cmd, "window_start", "fit window start");
  flags.add<int>(cmd, "window_end", "fit window end (exclusive)");
  flags.add<std::uint64_t>(cmd, "seed", "master RNG seed");
  flags.add<int>(cmd, "threads", "worker threads (0 = auto)");
  flags.add<std::uint64_t>(cmd, "ensemble", "classical particle count");
  flags.add<std::string>(cmd, "sampling", "random|stratified");
  flags.add<std::string>(cmd, "scenario", "ii|i|custom");
  flags.add<double>(cmd, "phi1", "scenario-i first kick phase");
  flags.add<double>(cmd, "phi2", "scenario-i second kick phase");
  flags.add<std::string>(cmd, "mode", "quantum|classical|both");
  flags.add<std::string>(cmd, "axis1", "scan axis 1 parameter");
  flags.add<double>(cmd, "axis1_min", "axis 1 minimum");
  flags.add<double>(cmd, "axis1_max", "axis 1 maximum");
  flags.add<int>(cmd, "axis1_count", "axis 1 point count");
  flags.add<std::string>(cmd, "axis2", "scan axis 2 parameter");
  flags.add<double>(cmd, "axis2_min", "axis 2 minimum");
  flags.add<double>(cmd, "axis2_max", "axis 2 maximum");
  flags.add<int>(cmd, "axis2_count", "axis 2 point count");
  flags.add<double>(cmd, "beta_mean", "mean quasi-momentum");
  flags.add<double>(cmd, "beta_sigma", "quasi-momentum spread");
  flags.add<int>(cmd, "beta_nodes", "Gauss-Hermite node count");
  flags.add<int>(cmd, "probe_t", "probe time for beta_mean scans");
  flags.add<int>(cmd, "n_init", "portrait initial conditions");
  flags.add<int>(cmd, "n_iter", "portrait iterations");
  flags.add<std::string>(cmd, "output", "output CSV path");
  flags.add<std::string>(cmd, "distribution",
                         "also dump the final |c_n|^2 to this CSV");
}

void print_error(const char* type, const std::string& message) {
  json record{{"error", {{"type", type}, {"message", message}}}};
  std::cerr << record.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"on-resonance double-kicked rotor ratchet accelerator"};
  app.set_version_flag("--version", dkra::kVersion);
  app.require_subcommand(1);

  FlagTable flags;
  for (const char* name :
       {"evolve", "classical", "portrait", "rate", "scan", "beta"}) {
    add_common_flags(flags, app.add_subcommand(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    print_error("config", e.what());
    return 2;
  }
  flags.collect();

  try {
    std::string text;
    if (!flags.config_path.empty()) text = dkra::read_file(flags.config_path);
    flags.overrides["command"] = app.get_subcommands().front()->get_name();
    const dkra::RunConfig cfg = dkra::parse_config(text, flags.overrides);
    const dkra::RunResult result = dkra::run(cfg);
    for (const auto& path : result.outputs)
      std::cout << "wrote " << path << "\n";
    for (const auto& warning : result.warnings)
      std::cout << "note: " << warning << "\n";
    return 0;
  } catch (const dkra::ConfigError& e) {
    print_error("config", e.what());
    return 2;
  } catch (const dkra::TruncationError& e) {
    print_error("numerical", e.what());
    return 3;
  } catch (const dkra::IoError& e) {
    print_error("io", e.what());
    return 4;
  }
}
