#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dkra/analysis.hpp"
#include "dkra/params.hpp"
#include "dkra/potential.hpp"

namespace dkra {

// Scan axis over one parameter: k_tilde, l_tilde, hbar_tilde, phi, or
// beta_mean. count == 1 pins the axis at min (degenerate scan).
struct ScanAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 1;
};

enum class ScanMode { quantum, classical };

enum class Sampling { random, stratified };

struct ScanSpec {
  std::vector<ScanAxis> axes;  // 1 or 2, distinct parameter names
  ScaledParams fixed{};
  PotentialSpec potentials{};
  ScanMode mode = ScanMode::quantum;
  int steps = 2000;
  FitWindow window{};
  std::uint64_t master_seed = 0;
  int threads = 1;
  // engine knobs
  int basis = 4096;
  int basis_max = 1 << 16;
  int guard_interval = 100;
  int n0 = 0;
  std::size_t ensemble = 100000;
  Sampling sampling = Sampling::random;
  // beta_mean scans: Gaussian spread and the probe time whose Delta<p> is
  // recorded instead of a fitted rate
  BetaDistribution beta_dist{};
  int probe_t = 7;
};

// Realized grid of fitted rates. Row-major over (axis1, axis2); axis2 stays
// empty for one-dimensional scans. Failed points carry NaN rates and a
// reason in notes; informational notes (basis doubling) leave the rate valid.
struct RateGrid {
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<double> rates;
  std::vector<double> fit_quality;
  std::vector<std::string> notes;
  ScanMode mode = ScanMode::quantum;

  std::size_t n1() const { return axis1.size(); }
  std::size_t n2() const { return axis2.empty() ? 1 : axis2.size(); }
  std::size_t index(std::size_t i, std::size_t j) const {
    return i * n2() + j;
  }
};

// Runs the scan point-by-point on a worker pool. Results are keyed by grid
// index and identical for any worker count; classical points draw their seed
// from hash(master_seed, index).
RateGrid run_scan(const ScanSpec& spec);

// Half-decade magnitude bucket labeled by its upper edge: everything below
// 10^-1.5 maps to "1e-1.5", [10^-1.5, 10^-1.0) to "1e-1.0", and so on up.
std::string bucket_label(double rate);
std::vector<std::string> bucketize(const std::vector<double>& rates);

/// splitmix64-style per-point seed derivation
std::uint64_t point_seed(std::uint64_t master, std::uint64_t index);

}  // namespace dkra
