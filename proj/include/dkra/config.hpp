#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkra/params.hpp"
#include "dkra/potential.hpp"

namespace dkra {

// Fully-resolved run description. Field names double as config-file keys and
// CLI flag names; every run serializes this struct into its metadata sidecar
// so outputs can be reproduced from the sidecar alone.
struct RunConfig {
  std::string command = "evolve";  // evolve|classical|portrait|rate|scan|beta

  // map parameters
  double k_tilde = 3.0;
  double l_tilde = 1.0;
  double hbar_tilde = 1.0;
  double phi = 1.5707963267948966;  // pi/2
  int nu = 1;
  int mu = 1;

  // quantum engine
  double beta = 0.0;
  int n0 = 0;
  int basis = 4096;
  int basis_max = 1 << 16;
  int guard_interval = 100;

  // run shape
  int steps = 2000;
  int window_start = 1000;
  int window_end = 2000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  // classical engine
  std::uint64_t ensemble = 1000000;
  std::string sampling = "random";  // random|stratified

  // kick potentials
  std::string scenario = "ii";  // ii|i|custom
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::vector<Harmonic> vk_terms;
  std::vector<Harmonic> vl_terms;

  // rate/scan
  std::string mode = "quantum";  // quantum|classical|both
  std::string axis1;             // ""=unset; k_tilde|l_tilde|hbar_tilde|phi|beta_mean
  double axis1_min = 0.0;
  double axis1_max = 0.0;
  int axis1_count = 1;
  std::string axis2;
  double axis2_min = 0.0;
  double axis2_max = 0.0;
  int axis2_count = 1;

  // quasi-momentum averaging
  double beta_mean = 0.0;
  double beta_sigma = 0.002;
  int beta_nodes = 64;
  int probe_t = 7;

  // portrait
  int n_init = 200;
  int n_iter = 500;

  // outputs
  std::string output = "out.csv";
  std::string distribution;  // optional |c_n|^2 dump path (evolve)
};

nlohmann::json to_json(const RunConfig& cfg);

// Builds a RunConfig from config-file text plus flag overrides (a JSON
// object keyed like the file). Precedence: defaults < file < overrides.
// Unknown keys and out-of-range values raise ConfigError naming the key.
// A metadata sidecar fed back as config text is unwrapped automatically.
RunConfig parse_config(const std::string& text,
                       const nlohmann::json& overrides = nlohmann::json::object());

ScaledParams scaled_params_from(const RunConfig& cfg);
PotentialSpec potential_spec_from(const RunConfig& cfg);

struct RunResult {
  std::vector<std::string> outputs;   // files written
  std::vector<std::string> warnings;  // e.g. basis doublings
  double wall_time_s = 0.0;
};

// Dispatches to the engines and writes CSV + metadata. Throws ConfigError,
// TruncationError, or IoError; the CLI maps those to exit codes 2/3/4.
RunResult run(const RunConfig& cfg);

}  // namespace dkra
