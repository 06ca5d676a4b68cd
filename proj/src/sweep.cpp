#include "dkra/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "dkra/classical.hpp"
#include "dkra/parallel.hpp"

namespace dkra {

namespace {

const std::set<std::string> kAxisNames = {"k_tilde", "l_tilde", "hbar_tilde",
                                          "phi", "beta_mean"};

std::vector<double> axis_values(const ScanAxis& a) {
  std::vector<double> v(static_cast<std::size_t>(a.count));
  for (int i = 0; i < a.count; ++i)
    v[static_cast<std::size_t>(i)] =
        a.count == 1 ? a.min
                     : a.min + (a.max - a.min) * i / (a.count - 1);
  return v;
}

void validate(const ScanSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw ConfigError("axes: a scan needs 1 or 2 axes");
  for (const auto& a : spec.axes) {
    if (!kAxisNames.count(a.name))
      throw ConfigError("axis: unknown parameter '" + a.name + "'");
    if (a.count < 1) throw ConfigError("axis: point count must be >= 1");
    if (!(a.min <= a.max)) throw ConfigError("axis: min must be <= max");
    if (a.name == "beta_mean" && spec.mode == ScanMode::classical)
      throw ConfigError("axis: beta_mean scans require quantum mode");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
    throw ConfigError("axes: must reference distinct parameters");
  if (spec.steps < 1) throw ConfigError("steps: must be >= 1");
}

struct PointSetup {
  ScaledParams params;
  double beta_mean;
  bool beta_scan = false;
};

PointSetup apply_axes(const ScanSpec& spec, double v1, const double* v2) {
  PointSetup p{spec.fixed, spec.beta_dist.mean, false};
  auto apply = [&p](const std::string& name, double v) {
    if (name == "k_tilde") {
      p.params.k_tilde = v;
    } else if (name == "l_tilde") {
      p.params.l_tilde = v;
    } else if (name == "hbar_tilde") {
      p.params.hbar_tilde = v;
    } else if (name == "phi") {
      p.params.phi = v;
    } else {  // beta_mean
      p.beta_mean = v;
      p.beta_scan = true;
    }
  };
  apply(spec.axes[0].name, v1);
  if (v2) apply(spec.axes[1].name, *v2);
  return p;
}

}  // namespace

std::uint64_t point_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RateGrid run_scan(const ScanSpec& spec) {
  validate(spec);

  RateGrid grid;
  grid.mode = spec.mode;
  grid.axis1 = axis_values(spec.axes[0]);
  if (spec.axes.size() == 2) grid.axis2 = axis_values(spec.axes[1]);

  const std::size_t total = grid.n1() * grid.n2();
  grid.rates.assign(total, std::numeric_limits<double>::quiet_NaN());
  grid.fit_quality.assign(total, std::numeric_limits<double>::quiet_NaN());
  grid.notes.assign(total, "");

  const bool two_d = spec.axes.size() == 2;
  parallel_for(total, resolve_threads(spec.threads), [&](std::size_t idx) {
    const std::size_t i = idx / grid.n2();
    const std::size_t j = idx % grid.n2();
    const double v1 = grid.axis1[i];
    const double v2 = two_d ? grid.axis2[j] : 0.0;
    try {
      PointSetup point = apply_axes(spec, v1, two_d ? &v2 : nullptr);
      // re-validate: axis ranges may step outside supported parameters
      point.params = make_scaled(point.params.k_tilde, point.params.l_tilde,
                                 point.params.hbar_tilde, point.params.phi,
                                 point.params.resonance);
      auto [vk, vl] = spec.potentials.build(point.params.phi);

      std::vector<std::string> warnings;
      EvolveOptions opts;
      opts.n0 = spec.n0;
      opts.basis = spec.basis;
      opts.basis_max = spec.basis_max;
      opts.guard_interval = spec.guard_interval;
      opts.threads = 1;  // parallelism lives at the grid level
      opts.warnings = &warnings;

      if (point.beta_scan) {
        BetaDistribution dist = spec.beta_dist;
        dist.mean = point.beta_mean;
        const CurrentSeries s = beta_averaged_series(
            point.params, vk, vl, dist, spec.probe_t, opts);
        grid.rates[idx] = s.values.back();  // Delta<p> at the probe time
        grid.fit_quality[idx] = 1.0;
      } else if (spec.mode == ScanMode::quantum) {
        const CurrentSeries s =
            quantum_series(point.params, vk, vl, spec.steps, opts);
        const RateEstimate r = estimate_rate(s, spec.window);
        grid.rates[idx] = r.slope;
        grid.fit_quality[idx] = r.r_squared;
      } else {
        ClassicalEnsemble e =
            spec.sampling == Sampling::stratified
                ? make_stratified_ensemble(spec.ensemble)
                : make_ensemble(spec.ensemble,
                                point_seed(spec.master_seed, idx));
        CurrentSeries s;
        s.kind = SeriesKind::classical;
        s.params = point.params;
        s.values = ensemble_evolve(e, point.params, vk, vl, spec.steps, 1);
        const RateEstimate r = estimate_rate(s, spec.window);
        grid.rates[idx] = r.slope;
        grid.fit_quality[idx] = r.r_squared;
      }
      if (!warnings.empty()) {
        std::string joined;
        for (const auto& w : warnings) {
          if (!joined.empty()) joined += "; ";
          joined += w;
        }
        grid.notes[idx] = joined;
      }
    } catch (const TruncationError& err) {
      grid.notes[idx] = err.what();
    } catch (const ConfigError& err) {
      grid.notes[idx] = err.what();
    }
  });
  return grid;
}

std::string bucket_label(double rate) {
  const double a = std::abs(rate);
  double edge = -1.5;
  if (a >= std::pow(10.0, -1.5))
    edge = 0.5 * std::floor(2.0 * std::log10(a)) + 0.5;
  char buf[24];
  std::snprintf(buf, sizeof buf, "1e%.1f", edge);
  return buf;
}

std::vector<std::string> bucketize(const std::vector<double>& rates) {
  std::vector<std::string> labels;
  labels.reserve(rates.size());
  for (double r : rates) labels.push_back(bucket_label(r));
  return labels;
}

}  // namespace dkra
