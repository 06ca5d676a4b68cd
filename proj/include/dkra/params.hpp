#pragma once

#include <stdexcept>
#include <string>

namespace dkra {

// Invalid parameter values and malformed configs. Messages start with the
// offending key name so the CLI can report it verbatim.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the momentum basis hit its cap and the edge band still holds
// more population than the truncation guard allows.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output-file problems (unwritable path, disk errors).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quantum resonance order: T*hbar = 4*pi*nu/mu with coprime nu, mu.
// (1,1) is the main resonance, (1,2) the anti-resonance.
struct ResonanceOrder {
  int nu = 1;
  int mu = 1;
  bool operator==(const ResonanceOrder&) const = default;
};

ResonanceOrder make_resonance(int nu, int mu);

// Raw double-kicked-rotor knobs before the on-resonance rescaling.
struct PhysicalParams {
  double T = 0.0;     // kick period
  double eta = 0.0;   // intra-period delay, 0 < eta < T
  double K = 0.0;     // first kick amplitude
  double L = 0.0;     // second kick amplitude
  double hbar = 0.0;  // effective Planck constant of the raw system
};

// Rescaled control parameters of the resonance-reduced map.
struct ScaledParams {
  double k_tilde = 0.0;
  double l_tilde = 0.0;
  double hbar_tilde = 1.0;
  double phi = 0.0;  // phase shift between the two kick potentials
  ResonanceOrder resonance{};
  bool operator==(const ScaledParams&) const = default;
};

// Supported input ranges. k/l upper end and the hbar range follow the
// experimentally motivated bounds; hbar's lower end is extended downward so
// classical-correspondence runs are expressible.
inline constexpr double kKickAmplitudeMax = 100.0;
inline constexpr double kHbarMin = 0.01;
inline constexpr double kHbarMax = 20.0;

// Validating constructor; throws ConfigError naming the bad field.
ScaledParams make_scaled(double k_tilde, double l_tilde, double hbar_tilde,
                         double phi, ResonanceOrder resonance = {});

// On-resonance reduction: (K, L, hbar) -> (eta*K, eta*L, eta*hbar).
// Rejects configurations where T*hbar does not equal 4*pi*nu/mu to within
// 1e-12 relative tolerance; off-resonance dynamics is not modeled here.
ScaledParams rescale(const PhysicalParams& p, double phi,
                     ResonanceOrder resonance = {});

}  // namespace dkra
