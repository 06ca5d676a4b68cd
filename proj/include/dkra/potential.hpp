#pragma once

#include <utility>
#include <vector>

namespace dkra {

// One Fourier component a*cos(m*q + chi) of a 2*pi-periodic potential.
struct Harmonic {
  int m = 1;
  double a = 0.0;
  double chi = 0.0;
  bool operator==(const Harmonic&) const = default;
};

// Periodic kick potential V(q) = sum_j a_j cos(m_j q + chi_j).
// Restricting to finite cosine series keeps V(q + 2*pi) = V(q) exact and the
// derivative closed-form, which the classical map needs.
class Potential {
 public:
  Potential() = default;
  explicit Potential(std::vector<Harmonic> terms);

  double eval(double q) const;
  double deriv(double q) const;  // dV/dq = -sum a_j m_j sin(m_j q + chi_j)
  double operator()(double q) const { return eval(q); }

  const std::vector<Harmonic>& terms() const { return terms_; }
  bool operator==(const Potential&) const = default;

  /// cos(q + chi)
  static Potential cosine(double chi = 0.0);

 private:
  std::vector<Harmonic> terms_;
};

// Recipe for the (V_K, V_L) kick pair, resolved against the run's phi.
//
//   scenario_ii: V_K = cos(q),             V_L = cos(q + phi)   [the ratchet]
//   scenario_i:  V_K = cos(q + phi1) + sin(2q + phi2), V_L = cos(q)
//   custom:      explicit harmonic lists, used verbatim (phi inert)
struct PotentialSpec {
  enum class Kind { scenario_i, scenario_ii, custom };
  Kind kind = Kind::scenario_ii;
  double phi1 = 0.0;
  double phi2 = 0.0;
  Potential custom_k;
  Potential custom_l;
  bool operator==(const PotentialSpec&) const = default;

  std::pair<Potential, Potential> build(double phi) const;
};

}  // namespace dkra
