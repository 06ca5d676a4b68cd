#include "dkra/params.hpp"

#include <cmath>
#include <numeric>

namespace dkra {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

ResonanceOrder make_resonance(int nu, int mu) {
  check(nu >= 1, "nu: must be a positive integer");
  check(mu >= 1, "mu: must be a positive integer");
  check(std::gcd(nu, mu) == 1, "nu/mu: must be coprime integers");
  return ResonanceOrder{nu, mu};
}

ScaledParams make_scaled(double k_tilde, double l_tilde, double hbar_tilde,
                         double phi, ResonanceOrder resonance) {
  check(std::isfinite(k_tilde) && k_tilde >= 0.0 &&
            k_tilde <= kKickAmplitudeMax,
        "k_tilde: must be in [0, 100]");
  check(std::isfinite(l_tilde) && l_tilde >= 0.0 &&
            l_tilde <= kKickAmplitudeMax,
        "l_tilde: must be in [0, 100]");
  check(std::isfinite(hbar_tilde) && hbar_tilde >= kHbarMin &&
            hbar_tilde <= kHbarMax,
        "hbar_tilde: must be in [0.01, 20]");
  check(std::isfinite(phi) && phi >= -kPi && phi <= kPi,
        "phi: must be in [-pi, pi]");
  make_resonance(resonance.nu, resonance.mu);
  return ScaledParams{k_tilde, l_tilde, hbar_tilde, phi, resonance};
}

ScaledParams rescale(const PhysicalParams& p, double phi,
                     ResonanceOrder resonance) {
  check(std::isfinite(p.T) && p.T > 0.0, "T: must be positive");
  check(std::isfinite(p.eta) && p.eta > 0.0 && p.eta < p.T,
        "eta: must satisfy 0 < eta < T");
  check(std::isfinite(p.hbar) && p.hbar > 0.0, "hbar: must be positive");
  check(std::isfinite(p.K) && p.K >= 0.0, "K: must be non-negative");
  check(std::isfinite(p.L) && p.L >= 0.0, "L: must be non-negative");
  make_resonance(resonance.nu, resonance.mu);

  // On-resonance precondition: T*hbar = 4*pi*nu/mu.
  const double target = 4.0 * kPi * resonance.nu / resonance.mu;
  const double actual = p.T * p.hbar;
  if (std::abs(actual - target) > 1e-12 * target) {
    throw ConfigError(
        "T*hbar: off-resonance configuration (T*hbar != 4*pi*nu/mu); "
        "this artifact models on-resonance dynamics only");
  }
  return make_scaled(p.eta * p.K, p.eta * p.L, p.eta * p.hbar, phi, resonance);
}

}  // namespace dkra
