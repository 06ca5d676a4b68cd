#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkra/params.hpp"
#include "dkra/potential.hpp"

namespace dkra {

struct QuantumState;

enum class SeriesKind { quantum, classical };

// Mean-momentum time series, one sample per kick period starting at t = 0.
struct CurrentSeries {
  std::vector<double> values;
  SeriesKind kind = SeriesKind::quantum;
  ScaledParams params{};
};

// Ordinary least-squares line through (t, values[t]) over [t_start, t_end).
struct RateEstimate {
  double slope = 0.0;  // momentum per kick period
  double intercept = 0.0;
  double r_squared = 1.0;
  int t_start = 0;
  int t_end = 0;
};

struct FitWindow {
  int t_start = 1000;
  int t_end = 2000;  // exclusive
};

RateEstimate estimate_rate(const CurrentSeries& s, FitWindow w = {});

// Knobs shared by the quantum series drivers. The basis doubles (restarting
// the run) whenever the truncation guard trips, up to basis_max.
struct EvolveOptions {
  int n0 = 0;
  double beta = 0.0;
  int basis = 4096;
  int basis_max = 1 << 16;
  int guard_interval = 100;
  int threads = 1;  // beta-node parallelism; single runs are serial
  std::vector<std::string>* warnings = nullptr;
  QuantumState* final_state = nullptr;  // optional: receives the end state
};

// Evolves |n0> under the ratchet map and records the momentum expectation
// per kick. Throws TruncationError if the guard still fails at basis_max.
CurrentSeries quantum_series(const ScaledParams& params, const Potential& vk,
                             const Potential& vl, int steps,
                             const EvolveOptions& opts = {});

// Gaussian quasi-momentum distribution; sigma = 0 collapses to beta = mean.
struct BetaDistribution {
  double mean = 0.0;
  double sigma = 0.0;
  int nodes = 64;
};

// Gauss-Hermite average of Delta<p>(t) = <p(t)> - <p(0)> over beta ~
// N(mean, sigma^2). Components at nodes beta_k = mean + sqrt(2)*sigma*x_k
// evolve independently (in parallel when opts.threads > 1); the weighted
// reduction runs in fixed node order. Nodes are taken mod 1, which leaves
// Delta<p> unchanged.
CurrentSeries beta_averaged_series(const ScaledParams& params,
                                   const Potential& vk, const Potential& vl,
                                   const BetaDistribution& dist, int steps,
                                   const EvolveOptions& opts = {});

// Earliest t where the slope over [t, t+window) drops below fraction times
// the slope over [0, window); nullopt if that never happens (or the initial
// slope is not positive).
std::optional<int> saturation_time(const CurrentSeries& s, double fraction,
                                   int window = 20);

}  // namespace dkra
