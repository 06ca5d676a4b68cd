#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dkra/params.hpp"
#include "dkra/potential.hpp"

namespace dkra {

// Phase-space ensemble for the eta-classical map: coordinates q and scaled
// momenta p, one entry per particle.
struct ClassicalEnsemble {
  std::vector<double> q;
  std::vector<double> p;
  std::uint64_t seed = 0;

  std::size_t size() const { return q.size(); }
};

// One period of the eta-classical map in (q, p) with P = q + p:
//   P' = P - K * dV_K/dq (q),   q' = q + L * dV_L/dP (P'),   p' = P' - q'.
// For the ratchet potentials this reads P' = P + K sin q,
// q' = q - L sin(P' + phi). No range reduction: values grow ballistically.
std::pair<double, double> classical_step(double q, double p,
                                         const ScaledParams& params,
                                         const Potential& vk,
                                         const Potential& vl);

// p = 0 exactly, q i.i.d. uniform on [0, 2*pi) from the seeded generator.
// The same seed reproduces the ensemble bit-for-bit.
ClassicalEnsemble make_ensemble(std::size_t n, std::uint64_t seed);

// Equally spaced q on [0, 2*pi), p = 0: variance-free regression baseline.
ClassicalEnsemble make_stratified_ensemble(std::size_t n);

// Evolves every particle `steps` periods in place and returns the mean
// momentum per kick including t = 0. Particles are processed in fixed-size
// chunks whose partial sums are combined in chunk order, so the result is
// identical for any worker count.
std::vector<double> ensemble_evolve(ClassicalEnsemble& e,
                                    const ScaledParams& params,
                                    const Potential& vk, const Potential& vl,
                                    int steps, int threads = 1);

/// Reduce an angle or momentum to the fundamental cell [-pi, pi).
double fold_angle(double x);

// Iterates a grid of n_init initial conditions spanning the fundamental cell
// for n_iter periods; returns every visited point folded into [-pi, pi)^2.
std::vector<std::pair<double, double>> portrait(const ScaledParams& params,
                                                const Potential& vk,
                                                const Potential& vl,
                                                int n_init, int n_iter);

}  // namespace dkra
