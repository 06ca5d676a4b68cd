#include "dkra/classical.hpp"

#include <cmath>

#include "dkra/parallel.hpp"

namespace dkra {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kPi = 3.14159265358979323846;

// Fixed chunk size for the partitioned mean reduction; must not depend on
// the worker count or the results would change with parallelism.
constexpr std::size_t kChunk = 8192;

// splitmix64: portable, seedable 64-bit generator; the standard library
// distributions are implementation-defined, so uniforms are derived by hand
// to keep ensembles bit-identical across platforms.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // [0, 1), 53-bit
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

}  // namespace

std::pair<double, double> classical_step(double q, double p,
                                         const ScaledParams& params,
                                         const Potential& vk,
                                         const Potential& vl) {
  const double big_p = q + p - params.k_tilde * vk.deriv(q);
  const double q_next = q + params.l_tilde * vl.deriv(big_p);
  return {q_next, big_p - q_next};
}

ClassicalEnsemble make_ensemble(std::size_t n, std::uint64_t seed) {
  ClassicalEnsemble e;
  e.seed = seed;
  e.q.resize(n);
  e.p.assign(n, 0.0);
  SplitMix64 rng{seed};
  for (std::size_t i = 0; i < n; ++i) e.q[i] = kTwoPi * rng.uniform();
  return e;
}

ClassicalEnsemble make_stratified_ensemble(std::size_t n) {
  ClassicalEnsemble e;
  e.q.resize(n);
  e.p.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    e.q[i] = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return e;
}

std::vector<double> ensemble_evolve(ClassicalEnsemble& e,
                                    const ScaledParams& params,
                                    const Potential& vk, const Potential& vl,
                                    int steps, int threads) {
  const std::size_t n = e.size();
  const std::size_t n_chunks = n == 0 ? 0 : (n + kChunk - 1) / kChunk;
  const std::size_t rows = static_cast<std::size_t>(steps) + 1;

  // partial[c][t]: momentum sum of chunk c after t kicks. Each chunk is
  // evolved through all steps by one worker; the cross-chunk reduction below
  // runs in chunk order, so any worker count gives identical means.
  std::vector<std::vector<double>> partial(n_chunks);

  parallel_for(n_chunks, threads, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(lo + kChunk, n);
    auto& sums = partial[c];
    sums.assign(rows, 0.0);
    double s0 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s0 += e.p[i];
    sums[0] = s0;
    for (int t = 1; t <= steps; ++t) {
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) {
        const auto [qn, pn] = classical_step(e.q[i], e.p[i], params, vk, vl);
        e.q[i] = qn;
        e.p[i] = pn;
        s += pn;
      }
      sums[static_cast<std::size_t>(t)] = s;
    }
  });

  std::vector<double> means(rows, 0.0);
  for (std::size_t t = 0; t < rows; ++t) {
    double s = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) s += partial[c][t];
    means[t] = n == 0 ? 0.0 : s / static_cast<double>(n);
  }
  return means;
}

double fold_angle(double x) {
  return x - kTwoPi * std::floor((x + kPi) / kTwoPi);
}

std::vector<std::pair<double, double>> portrait(const ScaledParams& params,
                                                const Potential& vk,
                                                const Potential& vl,
                                                int n_init, int n_iter) {
  if (n_init < 1) throw ConfigError("n_init: must be >= 1");
  if (n_iter < 1) throw ConfigError("n_iter: must be >= 1");

  // lattice of initial conditions spanning the fundamental cell
  const int rows = std::max(1, static_cast<int>(std::sqrt(n_init)));
  const int cols = (n_init + rows - 1) / rows;

  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n_init) * (n_iter + 1));
  int placed = 0;
  for (int r = 0; r < rows && placed < n_init; ++r) {
    for (int c = 0; c < cols && placed < n_init; ++c, ++placed) {
      double q = -kPi + kTwoPi * (c + 0.5) / cols;
      double p = -kPi + kTwoPi * (r + 0.5) / rows;
      pts.emplace_back(fold_angle(q), fold_angle(p));
      for (int t = 0; t < n_iter; ++t) {
        const auto [qn, pn] = classical_step(q, p, params, vk, vl);
        q = qn;
        p = pn;
        pts.emplace_back(fold_angle(q), fold_angle(p));
      }
    }
  }
  return pts;
}

}  // namespace dkra
