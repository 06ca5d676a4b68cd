#pragma once

#include <complex>
#include <vector>

#include "dkra/fft.hpp"
#include "dkra/params.hpp"
#include "dkra/potential.hpp"

namespace dkra {

// Complex amplitudes over the truncated momentum ladder n in [-N/2, N/2),
// stored in FFT order (see Fft). Momentum eigenvalues are (n + beta) *
// hbar_tilde; beta is conserved by every operation below.
struct QuantumState {
  std::vector<std::complex<double>> amps;
  double beta = 0.0;
  double hbar_tilde = 1.0;

  int basis_size() const { return static_cast<int>(amps.size()); }
  double norm() const;                  // sum |c_n|^2
  double momentum_expectation() const;  // sum |c_n|^2 (n + beta) hbar_tilde
  std::complex<double> amplitude(int n) const;
};

int fft_index_to_n(int index, int basis);
int n_to_fft_index(int n, int basis);

// Momentum eigenstate |n0>; basis must be a power of two, |n0| < N/2,
// beta in [0, 1).
QuantumState make_initial_state(int n0, int basis, double beta,
                                double hbar_tilde);

// Population of the outer 10% band of |n|. Callers abort or double the basis
// when ok is false.
struct GridDiagnostic {
  double edge_population = 0.0;
  bool ok = true;
};
inline constexpr double kEdgePopulationLimit = 1e-10;
GridDiagnostic grid_guard(const QuantumState& state);

// Phase of the resonance factor exp(-2*pi*i*(nu/mu)*(n+beta)^2) for a single
// ladder index. The integer part of nu*n^2 is reduced modulo mu exactly, so
// e.g. the main resonance at beta = 0 is the identity and the anti-resonance
// is exactly (-1)^n.
std::complex<double> resonance_phase(int n, double beta, ResonanceOrder r);

/// (n + beta)^2 * hbar_tilde / 2
double free_phase_angle(int n, double beta, double hbar_tilde);

// One-period propagation engine for a fixed basis size. Owns the FFT plans
// and caches the phase tables of the most recent (params, potentials, state
// shape) combination, so repeated ratchet_step calls cost two transform pairs
// plus diagonal multiplies. Not thread-safe; use one instance per worker.
class Propagator {
 public:
  explicit Propagator(int basis);

  int basis() const { return basis_; }

  // Multiplies by exp(-i*strength*V(q)) on the position grid via the
  // spectral transform pair. Unitary by construction on the grid.
  void apply_kick(QuantumState& state, const Potential& v, double strength);

  // c_n *= exp(-i*sign*(n+beta)^2*hbar_tilde/2); sign=+1 is the forward free
  // flight, sign=-1 the negative-kinetic-energy one.
  void apply_free(QuantumState& state, int sign);

  void apply_resonance_phase(QuantumState& state, ResonanceOrder r);

  // Full one-period ratchet map: kick(vK, K/hbar), free(+), kick(vL, L/hbar),
  // free(-), resonance phase. At the main resonance with beta = 0 the last
  // factor is exactly the identity.
  void ratchet_step(QuantumState& state, const ScaledParams& params,
                    const Potential& vk, const Potential& vl);

 private:
  struct TableKey {
    ScaledParams params;
    Potential vk, vl;
    double beta = 0.0;
    double hbar_tilde = 0.0;
    bool valid = false;
    bool operator==(const TableKey&) const = default;
  };

  void ensure_tables(const ScaledParams& params, const Potential& vk,
                     const Potential& vl, const QuantumState& state);

  int basis_;
  Fft fft_;
  TableKey key_;
  std::vector<std::complex<double>> kick_k_, kick_l_;
  std::vector<std::complex<double>> free_plus_, free_minus_, res_;
};

}  // namespace dkra
