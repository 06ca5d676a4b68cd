#include "dkra/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dkra/parallel.hpp"
#include "dkra/quadrature.hpp"
#include "dkra/quantum.hpp"

namespace dkra {

namespace {

constexpr double kSqrtPi = 1.7724538509055160;

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

OlsFit ols(const std::vector<double>& values, int t_start, int t_end) {
  const int n = t_end - t_start;
  double tm = 0.0, ym = 0.0;
  for (int t = t_start; t < t_end; ++t) {
    tm += t;
    ym += values[static_cast<std::size_t>(t)];
  }
  tm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int t = t_start; t < t_end; ++t) {
    const double dt = t - tm;
    sxx += dt * dt;
    sxy += dt * (values[static_cast<std::size_t>(t)] - ym);
  }
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * tm;
  double ss_res = 0.0, ss_tot = 0.0;
  for (int t = t_start; t < t_end; ++t) {
    const double y = values[static_cast<std::size_t>(t)];
    const double r = y - (fit.intercept + fit.slope * t);
    ss_res += r * r;
    ss_tot += (y - ym) * (y - ym);
  }
  // zero-variance series fit themselves perfectly
  fit.r_squared =
      ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return fit;
}

}  // namespace

RateEstimate estimate_rate(const CurrentSeries& s, FitWindow w) {
  if (w.t_start < 0 || w.t_end - w.t_start < 2)
    throw ConfigError("window: needs at least 2 samples");
  if (static_cast<std::size_t>(w.t_end) > s.values.size())
    throw ConfigError("window: series does not cover [t_start, t_end)");
  const OlsFit fit = ols(s.values, w.t_start, w.t_end);
  return {fit.slope, fit.intercept, fit.r_squared, w.t_start, w.t_end};
}

namespace {

// Evolution with the truncation guard: restarts with a doubled basis until
// the guard stays clean or basis_max is exceeded.
std::vector<double> guarded_series(const ScaledParams& params,
                                   const Potential& vk, const Potential& vl,
                                   int steps, double beta,
                                   const EvolveOptions& opts) {
  const int interval = std::max(1, opts.guard_interval);
  for (int basis = opts.basis;; basis *= 2) {
    QuantumState state =
        make_initial_state(opts.n0, basis, beta, params.hbar_tilde);
    Propagator prop(basis);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(steps) + 1);
    values.push_back(state.momentum_expectation());
    bool clean = true;
    for (int t = 1; t <= steps; ++t) {
      prop.ratchet_step(state, params, vk, vl);
      values.push_back(state.momentum_expectation());
      if (t % interval == 0 || t == steps) {
        if (!grid_guard(state).ok) {
          clean = false;
          if (basis * 2 > opts.basis_max)
            throw TruncationError(
                "basis: edge population above guard limit at basis_max=" +
                std::to_string(opts.basis_max) + " (t=" + std::to_string(t) +
                ")");
          if (opts.warnings)
            opts.warnings->push_back("basis doubled to " +
                                     std::to_string(basis * 2) +
                                     " after guard failure at t=" +
                                     std::to_string(t));
          break;
        }
      }
    }
    if (clean) {
      if (opts.final_state) *opts.final_state = std::move(state);
      return values;
    }
  }
}

}  // namespace

CurrentSeries quantum_series(const ScaledParams& params, const Potential& vk,
                             const Potential& vl, int steps,
                             const EvolveOptions& opts) {
  if (steps < 0) throw ConfigError("steps: must be non-negative");
  CurrentSeries s;
  s.kind = SeriesKind::quantum;
  s.params = params;
  s.values = guarded_series(params, vk, vl, steps, opts.beta, opts);
  return s;
}

CurrentSeries beta_averaged_series(const ScaledParams& params,
                                   const Potential& vk, const Potential& vl,
                                   const BetaDistribution& dist, int steps,
                                   const EvolveOptions& opts) {
  if (dist.nodes < 1) throw ConfigError("beta_nodes: must be >= 1");
  if (dist.sigma < 0.0) throw ConfigError("beta_sigma: must be >= 0");

  CurrentSeries s;
  s.kind = SeriesKind::quantum;
  s.params = params;

  const std::size_t rows = static_cast<std::size_t>(steps) + 1;
  if (dist.sigma == 0.0) {
    EvolveOptions node_opts = opts;
    node_opts.beta = dist.mean - std::floor(dist.mean);
    auto vals = quantum_series(params, vk, vl, steps, node_opts).values;
    for (std::size_t t = 0; t < rows; ++t) vals[t] -= vals[0];
    s.values = std::move(vals);
    return s;
  }

  const GaussHermite gh = gauss_hermite(dist.nodes);
  std::vector<std::vector<double>> component(
      static_cast<std::size_t>(dist.nodes));
  std::vector<std::vector<std::string>> node_warnings(
      static_cast<std::size_t>(dist.nodes));

  parallel_for(static_cast<std::size_t>(dist.nodes),
               resolve_threads(opts.threads), [&](std::size_t k) {
                 double beta_k =
                     dist.mean + std::sqrt(2.0) * dist.sigma * gh.nodes[k];
                 beta_k -= std::floor(beta_k);  // phases are 1-periodic in beta
                 EvolveOptions node_opts = opts;
                 node_opts.beta = beta_k;
                 node_opts.final_state = nullptr;
                 node_opts.warnings =
                     opts.warnings ? &node_warnings[k] : nullptr;
                 component[k] = guarded_series(params, vk, vl, steps, beta_k,
                                               node_opts);
               });

  // weighted Delta<p> reduction in fixed node order
  s.values.assign(rows, 0.0);
  for (std::size_t k = 0; k < component.size(); ++k) {
    const double wk = gh.weights[k] / kSqrtPi;
    const double offset = component[k][0];
    for (std::size_t t = 0; t < rows; ++t)
      s.values[t] += wk * (component[k][t] - offset);
  }
  if (opts.warnings) {
    for (auto& list : node_warnings)
      for (auto& msg : list) opts.warnings->push_back(std::move(msg));
  }
  return s;
}

std::optional<int> saturation_time(const CurrentSeries& s, double fraction,
                                   int window) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ConfigError("fraction: must be in (0, 1)");
  const int len = static_cast<int>(s.values.size());
  if (window < 2 || len < window) return std::nullopt;
  const double initial = ols(s.values, 0, window).slope;
  if (initial <= 0.0) return std::nullopt;
  for (int t = 0; t + window <= len; ++t) {
    if (ols(s.values, t, t + window).slope < fraction * initial) return t;
  }
  return std::nullopt;
}

}  // namespace dkra
