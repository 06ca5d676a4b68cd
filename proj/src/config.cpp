#include "dkra/config.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "dkra/analysis.hpp"
#include "dkra/classical.hpp"
#include "dkra/io.hpp"
#include "dkra/parallel.hpp"
#include "dkra/quantum.hpp"
#include "dkra/sweep.hpp"
#include "dkra/version.hpp"

namespace dkra {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"evolve", "classical", "portrait",
                                         "rate",   "scan",      "beta"};
const std::set<std::string> kAxisNames = {"k_tilde", "l_tilde", "hbar_tilde",
                                          "phi", "beta_mean"};

const std::set<std::string> kKnownKeys = {
    "command",      "k_tilde",     "l_tilde",     "hbar_tilde",
    "phi",          "nu",          "mu",          "beta",
    "n0",           "basis",       "basis_max",   "guard_interval",
    "steps",        "window_start", "window_end", "seed",
    "threads",      "ensemble",    "sampling",    "scenario",
    "phi1",         "phi2",        "vk_terms",    "vl_terms",
    "mode",         "axis1",       "axis1_min",   "axis1_max",
    "axis1_count",  "axis2",       "axis2_min",   "axis2_max",
    "axis2_count",  "beta_mean",   "beta_sigma",  "beta_nodes",
    "probe_t",      "n_init",      "n_iter",      "output",
    "distribution"};

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
  return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !v.is_number_integer())
    throw ConfigError(key + ": expected a non-negative integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0)
    throw ConfigError(key + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

std::vector<Harmonic> as_terms(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + ": expected a list of [m, a, chi]");
  std::vector<Harmonic> terms;
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != 3)
      throw ConfigError(key + ": each term must be a [m, a, chi] triple");
    Harmonic h;
    h.m = as_int(item[0], key);
    h.a = as_number(item[1], key);
    h.chi = as_number(item[2], key);
    terms.push_back(h);
  }
  return terms;
}

void apply_object(RunConfig& cfg, const json& obj) {
  if (!obj.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!kKnownKeys.count(key))
      throw ConfigError("config: unknown key '" + key + "'");
    if (key == "command") cfg.command = as_string(value, key);
    else if (key == "k_tilde") cfg.k_tilde = as_number(value, key);
    else if (key == "l_tilde") cfg.l_tilde = as_number(value, key);
    else if (key == "hbar_tilde") cfg.hbar_tilde = as_number(value, key);
    else if (key == "phi") cfg.phi = as_number(value, key);
    else if (key == "nu") cfg.nu = as_int(value, key);
    else if (key == "mu") cfg.mu = as_int(value, key);
    else if (key == "beta") cfg.beta = as_number(value, key);
    else if (key == "n0") cfg.n0 = as_int(value, key);
    else if (key == "basis") cfg.basis = as_int(value, key);
    else if (key == "basis_max") cfg.basis_max = as_int(value, key);
    else if (key == "guard_interval") cfg.guard_interval = as_int(value, key);
    else if (key == "steps") cfg.steps = as_int(value, key);
    else if (key == "window_start") cfg.window_start = as_int(value, key);
    else if (key == "window_end") cfg.window_end = as_int(value, key);
    else if (key == "seed") cfg.seed = as_u64(value, key);
    else if (key == "threads") cfg.threads = as_int(value, key);
    else if (key == "ensemble") cfg.ensemble = as_u64(value, key);
    else if (key == "sampling") cfg.sampling = as_string(value, key);
    else if (key == "scenario") cfg.scenario = as_string(value, key);
    else if (key == "phi1") cfg.phi1 = as_number(value, key);
    else if (key == "phi2") cfg.phi2 = as_number(value, key);
    else if (key == "vk_terms") cfg.vk_terms = as_terms(value, key);
    else if (key == "vl_terms") cfg.vl_terms = as_terms(value, key);
    else if (key == "mode") cfg.mode = as_string(value, key);
    else if (key == "axis1") cfg.axis1 = as_string(value, key);
    else if (key == "axis1_min") cfg.axis1_min = as_number(value, key);
    else if (key == "axis1_max") cfg.axis1_max = as_number(value, key);
    else if (key == "axis1_count") cfg.axis1_count = as_int(value, key);
    else if (key == "axis2") cfg.axis2 = as_string(value, key);
    else if (key == "axis2_min") cfg.axis2_min = as_number(value, key);
    else if (key == "axis2_max") cfg.axis2_max = as_number(value, key);
    else if (key == "axis2_count") cfg.axis2_count = as_int(value, key);
    else if (key == "beta_mean") cfg.beta_mean = as_number(value, key);
    else if (key == "beta_sigma") cfg.beta_sigma = as_number(value, key);
    else if (key == "beta_nodes") cfg.beta_nodes = as_int(value, key);
    else if (key == "probe_t") cfg.probe_t = as_int(value, key);
    else if (key == "n_init") cfg.n_init = as_int(value, key);
    else if (key == "n_iter") cfg.n_iter = as_int(value, key);
    else if (key == "output") cfg.output = as_string(value, key);
    else if (key == "distribution") cfg.distribution = as_string(value, key);
  }
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate(const RunConfig& cfg) {
  if (!kCommands.count(cfg.command))
    throw ConfigError("command: unknown command '" + cfg.command + "'");
  scaled_params_from(cfg);  // checks k/l/hbar/phi/nu/mu with key names
  if (!(cfg.beta >= 0.0 && cfg.beta < 1.0))
    throw ConfigError("beta: must be in [0, 1)");
  if (!is_power_of_two(cfg.basis) || cfg.basis < 4)
    throw ConfigError("basis: must be a power of two >= 4");
  if (!is_power_of_two(cfg.basis_max) || cfg.basis_max < cfg.basis ||
      cfg.basis_max > (1 << 20))
    throw ConfigError("basis_max: must be a power of two in [basis, 2^20]");
  if (std::abs(cfg.n0) >= cfg.basis / 2)
    throw ConfigError("n0: initial level outside the momentum basis");
  if (cfg.guard_interval < 1)
    throw ConfigError("guard_interval: must be >= 1");
  if (cfg.steps < 0) throw ConfigError("steps: must be non-negative");
  if (cfg.window_start < 0 || cfg.window_end - cfg.window_start < 2)
    throw ConfigError("window_start/window_end: need t_start >= 0 and at "
                      "least 2 samples");
  if (cfg.threads < 0) throw ConfigError("threads: must be >= 0 (0 = auto)");
  if (cfg.ensemble < 1) throw ConfigError("ensemble: must be >= 1");
  if (cfg.sampling != "random" && cfg.sampling != "stratified")
    throw ConfigError("sampling: must be 'random' or 'stratified'");
  if (cfg.scenario != "ii" && cfg.scenario != "i" && cfg.scenario != "custom")
    throw ConfigError("scenario: must be 'ii', 'i', or 'custom'");
  if (cfg.mode != "quantum" && cfg.mode != "classical" && cfg.mode != "both")
    throw ConfigError("mode: must be 'quantum', 'classical', or 'both'");
  for (const auto& [name, axis] :
       {std::pair<std::string, std::string>{"axis1", cfg.axis1},
        {"axis2", cfg.axis2}}) {
    if (!axis.empty() && !kAxisNames.count(axis))
      throw ConfigError(name + ": unknown scan parameter '" + axis + "'");
  }
  if (!cfg.axis2.empty() && cfg.axis1.empty())
    throw ConfigError("axis2: requires axis1");
  if (cfg.axis1_count < 1 || cfg.axis2_count < 1)
    throw ConfigError("axis1_count/axis2_count: must be >= 1");
  if (cfg.command == "scan" && cfg.axis1.empty())
    throw ConfigError("axis1: the scan command needs at least one axis");
  if (cfg.beta_sigma < 0.0) throw ConfigError("beta_sigma: must be >= 0");
  if (cfg.beta_nodes < 1) throw ConfigError("beta_nodes: must be >= 1");
  if (cfg.probe_t < 0) throw ConfigError("probe_t: must be >= 0");
  if (cfg.n_init < 1) throw ConfigError("n_init: must be >= 1");
  if (cfg.n_iter < 1) throw ConfigError("n_iter: must be >= 1");
  if (cfg.output.empty()) throw ConfigError("output: must not be empty");
  // potential terms validate on construction
  potential_spec_from(cfg);
}

json terms_to_json(const std::vector<Harmonic>& terms) {
  json arr = json::array();
  for (const auto& h : terms) arr.push_back(json::array({h.m, h.a, h.chi}));
  return arr;
}

}  // namespace

json to_json(const RunConfig& cfg) {
  return json{{"command", cfg.command},
              {"k_tilde", cfg.k_tilde},
              {"l_tilde", cfg.l_tilde},
              {"hbar_tilde", cfg.hbar_tilde},
              {"phi", cfg.phi},
              {"nu", cfg.nu},
              {"mu", cfg.mu},
              {"beta", cfg.beta},
              {"n0", cfg.n0},
              {"basis", cfg.basis},
              {"basis_max", cfg.basis_max},
              {"guard_interval", cfg.guard_interval},
              {"steps", cfg.steps},
              {"window_start", cfg.window_start},
              {"window_end", cfg.window_end},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"ensemble", cfg.ensemble},
              {"sampling", cfg.sampling},
              {"scenario", cfg.scenario},
              {"phi1", cfg.phi1},
              {"phi2", cfg.phi2},
              {"vk_terms", terms_to_json(cfg.vk_terms)},
              {"vl_terms", terms_to_json(cfg.vl_terms)},
              {"mode", cfg.mode},
              {"axis1", cfg.axis1},
              {"axis1_min", cfg.axis1_min},
              {"axis1_max", cfg.axis1_max},
              {"axis1_count", cfg.axis1_count},
              {"axis2", cfg.axis2},
              {"axis2_min", cfg.axis2_min},
              {"axis2_max", cfg.axis2_max},
              {"axis2_count", cfg.axis2_count},
              {"beta_mean", cfg.beta_mean},
              {"beta_sigma", cfg.beta_sigma},
              {"beta_nodes", cfg.beta_nodes},
              {"probe_t", cfg.probe_t},
              {"n_init", cfg.n_init},
              {"n_iter", cfg.n_iter},
              {"output", cfg.output},
              {"distribution", cfg.distribution}};
}

RunConfig parse_config(const std::string& text, const json& overrides) {
  RunConfig cfg;
  if (!text.empty()) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    // allow feeding a metadata sidecar straight back in
    if (j.is_object() && j.contains("config") && j["config"].is_object())
      j = j["config"];
    apply_object(cfg, j);
  }
  apply_object(cfg, overrides);
  validate(cfg);
  return cfg;
}

ScaledParams scaled_params_from(const RunConfig& cfg) {
  return make_scaled(cfg.k_tilde, cfg.l_tilde, cfg.hbar_tilde, cfg.phi,
                     make_resonance(cfg.nu, cfg.mu));
}

PotentialSpec potential_spec_from(const RunConfig& cfg) {
  PotentialSpec spec;
  spec.phi1 = cfg.phi1;
  spec.phi2 = cfg.phi2;
  if (cfg.scenario == "ii") {
    spec.kind = PotentialSpec::Kind::scenario_ii;
  } else if (cfg.scenario == "i") {
    spec.kind = PotentialSpec::Kind::scenario_i;
  } else {
    spec.kind = PotentialSpec::Kind::custom;
    spec.custom_k = Potential(cfg.vk_terms);
    spec.custom_l = Potential(cfg.vl_terms);
  }
  return spec;
}

namespace {

std::string with_mode_suffix(const std::string& path, const std::string& tag) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "." + tag;
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

std::string series_csv(const std::vector<double>& values) {
  std::string csv = "t,value\n";
  for (std::size_t t = 0; t < values.size(); ++t)
    csv += std::to_string(t) + "," + format_double(values[t]) + "\n";
  return csv;
}

std::string rate_csv_header() {
  return "kind,slope,intercept,r_squared,t_start,t_end\n";
}

std::string rate_csv_row(const std::string& kind, const RateEstimate& r) {
  return kind + "," + format_double(r.slope) + "," +
         format_double(r.intercept) + "," + format_double(r.r_squared) + "," +
         std::to_string(r.t_start) + "," + std::to_string(r.t_end) + "\n";
}

std::string grid_csv(const RateGrid& grid) {
  std::string csv = "axis1,axis2,rate,r_squared,bucket\n";
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      const std::size_t idx = grid.index(i, j);
      const double rate = grid.rates[idx];
      const bool missing = std::isnan(rate);
      csv += format_double(grid.axis1[i]) + ",";
      csv += (grid.axis2.empty() ? "" : format_double(grid.axis2[j])) + ",";
      csv += format_double(rate) + "," + format_double(grid.fit_quality[idx]);
      csv += "," + (missing ? std::string("missing") : bucket_label(rate));
      csv += "\n";
    }
  }
  return csv;
}

std::string distribution_csv(const QuantumState& state) {
  std::string csv = "n,beta,prob\n";
  const int n_basis = state.basis_size();
  for (int n = -n_basis / 2; n < n_basis / 2; ++n) {
    csv += std::to_string(n) + "," + format_double(state.beta) + "," +
           format_double(std::norm(state.amplitude(n))) + "\n";
  }
  return csv;
}

void write_metadata(const RunConfig& cfg, const RunResult& result,
                    const json& extra) {
  for (const auto& path : result.outputs) {
    json meta{{"config", to_json(cfg)},
              {"seed", cfg.seed},
              {"version", kVersion},
              {"wall_time_s", result.wall_time_s},
              {"warnings", result.warnings}};
    for (const auto& [k, v] : extra.items()) meta[k] = v;
    write_file(path + ".meta.json", meta.dump(1) + "\n");
  }
}

json scan_failures(const RateGrid& grid) {
  json failures = json::array();
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      const std::size_t idx = grid.index(i, j);
      if (grid.notes[idx].empty()) continue;
      json f{{"axis1", grid.axis1[i]}, {"note", grid.notes[idx]},
             {"missing", std::isnan(grid.rates[idx])}};
      if (!grid.axis2.empty()) f["axis2"] = grid.axis2[j];
      failures.push_back(f);
    }
  }
  return failures;
}

ScanSpec scan_spec_from(const RunConfig& cfg, ScanMode mode) {
  ScanSpec spec;
  spec.axes.push_back(
      {cfg.axis1, cfg.axis1_min, cfg.axis1_max, cfg.axis1_count});
  if (!cfg.axis2.empty())
    spec.axes.push_back(
        {cfg.axis2, cfg.axis2_min, cfg.axis2_max, cfg.axis2_count});
  spec.fixed = scaled_params_from(cfg);
  spec.potentials = potential_spec_from(cfg);
  spec.mode = mode;
  spec.steps = cfg.steps;
  spec.window = {cfg.window_start, cfg.window_end};
  spec.master_seed = cfg.seed;
  spec.threads = resolve_threads(cfg.threads);
  spec.basis = cfg.basis;
  spec.basis_max = cfg.basis_max;
  spec.guard_interval = cfg.guard_interval;
  spec.n0 = cfg.n0;
  spec.ensemble = cfg.ensemble;
  spec.sampling = cfg.sampling == "stratified" ? Sampling::stratified
                                               : Sampling::random;
  spec.beta_dist = {cfg.beta_mean, cfg.beta_sigma, cfg.beta_nodes};
  spec.probe_t = cfg.probe_t;
  return spec;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  RunResult result;

  const ScaledParams params = scaled_params_from(cfg);
  const PotentialSpec pot_spec = potential_spec_from(cfg);
  const auto [vk, vl] = pot_spec.build(params.phi);

  EvolveOptions opts;
  opts.n0 = cfg.n0;
  opts.beta = cfg.beta;
  opts.basis = cfg.basis;
  opts.basis_max = cfg.basis_max;
  opts.guard_interval = cfg.guard_interval;
  opts.threads = resolve_threads(cfg.threads);
  opts.warnings = &result.warnings;

  json extra = json::object();

  if (cfg.command == "evolve") {
    QuantumState final_state;
    opts.final_state = cfg.distribution.empty() ? nullptr : &final_state;
    const CurrentSeries s = quantum_series(params, vk, vl, cfg.steps, opts);
    write_file(cfg.output, series_csv(s.values));
    result.outputs.push_back(cfg.output);
    if (!cfg.distribution.empty()) {
      write_file(cfg.distribution, distribution_csv(final_state));
      result.outputs.push_back(cfg.distribution);
    }
  } else if (cfg.command == "classical") {
    ClassicalEnsemble e = cfg.sampling == "stratified"
                              ? make_stratified_ensemble(cfg.ensemble)
                              : make_ensemble(cfg.ensemble, cfg.seed);
    const auto values =
        ensemble_evolve(e, params, vk, vl, cfg.steps, opts.threads);
    write_file(cfg.output, series_csv(values));
    result.outputs.push_back(cfg.output);
  } else if (cfg.command == "portrait") {
    const auto points = portrait(params, vk, vl, cfg.n_init, cfg.n_iter);
    std::string csv = "q,p\n";
    for (const auto& [q, p] : points)
      csv += format_double(q) + "," + format_double(p) + "\n";
    write_file(cfg.output, csv);
    result.outputs.push_back(cfg.output);
  } else if (cfg.command == "rate") {
    const FitWindow window{cfg.window_start, cfg.window_end};
    std::string csv = rate_csv_header();
    if (cfg.mode == "quantum" || cfg.mode == "both") {
      const CurrentSeries s = quantum_series(params, vk, vl, cfg.steps, opts);
      csv += rate_csv_row("quantum", estimate_rate(s, window));
    }
    if (cfg.mode == "classical" || cfg.mode == "both") {
      ClassicalEnsemble e = cfg.sampling == "stratified"
                                ? make_stratified_ensemble(cfg.ensemble)
                                : make_ensemble(cfg.ensemble, cfg.seed);
      CurrentSeries s;
      s.kind = SeriesKind::classical;
      s.params = params;
      s.values = ensemble_evolve(e, params, vk, vl, cfg.steps, opts.threads);
      csv += rate_csv_row("classical", estimate_rate(s, window));
    }
    write_file(cfg.output, csv);
    result.outputs.push_back(cfg.output);
  } else if (cfg.command == "scan") {
    json failures = json::array();
    if (cfg.mode == "both") {
      const RateGrid gq = run_scan(scan_spec_from(cfg, ScanMode::quantum));
      const RateGrid gc = run_scan(scan_spec_from(cfg, ScanMode::classical));
      const std::string pq = with_mode_suffix(cfg.output, "quantum");
      const std::string pc = with_mode_suffix(cfg.output, "classical");
      write_file(pq, grid_csv(gq));
      write_file(pc, grid_csv(gc));
      result.outputs.push_back(pq);
      result.outputs.push_back(pc);
      failures = json{{"quantum", scan_failures(gq)},
                      {"classical", scan_failures(gc)}};
    } else {
      const ScanMode mode = cfg.mode == "classical" ? ScanMode::classical
                                                    : ScanMode::quantum;
      const RateGrid grid = run_scan(scan_spec_from(cfg, mode));
      write_file(cfg.output, grid_csv(grid));
      result.outputs.push_back(cfg.output);
      failures = scan_failures(grid);
    }
    extra["failures"] = failures;
  } else if (cfg.command == "beta") {
    const BetaDistribution dist{cfg.beta_mean, cfg.beta_sigma, cfg.beta_nodes};
    const CurrentSeries s =
        beta_averaged_series(params, vk, vl, dist, cfg.steps, opts);
    write_file(cfg.output, series_csv(s.values));
    result.outputs.push_back(cfg.output);
  }

  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_metadata(cfg, result, extra);
  return result;
}

}  // namespace dkra
