#include "dkra/potential.hpp"

#include <cmath>

#include "dkra/params.hpp"

namespace dkra {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
}

Potential::Potential(std::vector<Harmonic> terms) : terms_(std::move(terms)) {
  for (const auto& h : terms_) {
    if (h.m < 1) throw ConfigError("potential: harmonic index m must be >= 1");
    if (!std::isfinite(h.a) || !std::isfinite(h.chi))
      throw ConfigError("potential: amplitudes and phases must be finite");
  }
}

double Potential::eval(double q) const {
  double v = 0.0;
  for (const auto& h : terms_) v += h.a * std::cos(h.m * q + h.chi);
  return v;
}

double Potential::deriv(double q) const {
  double d = 0.0;
  for (const auto& h : terms_) d -= h.a * h.m * std::sin(h.m * q + h.chi);
  return d;
}

Potential Potential::cosine(double chi) {
  return Potential({{1, 1.0, chi}});
}

std::pair<Potential, Potential> PotentialSpec::build(double phi) const {
  switch (kind) {
    case Kind::scenario_ii:
      return {Potential::cosine(), Potential::cosine(phi)};
    case Kind::scenario_i:
      // sin(2q + phi2) = cos(2q + phi2 - pi/2)
      return {Potential({{1, 1.0, phi1}, {2, 1.0, phi2 - kHalfPi}}),
              Potential::cosine()};
    case Kind::custom:
      return {custom_k, custom_l};
  }
  throw ConfigError("scenario: unknown potential kind");
}

}  // namespace dkra
