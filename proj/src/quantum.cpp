#include "dkra/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace dkra {

namespace {

constexpr double kTwoPi = 6.283185307179586;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// exp(-2*pi*i*f) for f in [0, 1), exact at quarter turns so that the main
// resonance is the identity and the anti-resonance is exactly (-1)^n.
std::complex<double> unit_phase(double frac) {
  const double quarter = 4.0 * frac;
  if (quarter == std::floor(quarter)) {
    switch (static_cast<int>(quarter) & 3) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, -1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, 1.0};
    }
  }
  return std::polar(1.0, -kTwoPi * frac);
}

}  // namespace

int fft_index_to_n(int index, int basis) {
  return index < basis / 2 ? index : index - basis;
}

int n_to_fft_index(int n, int basis) {
  return n >= 0 ? n : n + basis;
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& c : amps) s += std::norm(c);
  return s;
}

double QuantumState::momentum_expectation() const {
  const int n_basis = basis_size();
  double s = 0.0;
  for (int i = 0; i < n_basis; ++i)
    s += std::norm(amps[i]) * (fft_index_to_n(i, n_basis) + beta);
  return s * hbar_tilde;
}

std::complex<double> QuantumState::amplitude(int n) const {
  return amps[n_to_fft_index(n, basis_size())];
}

QuantumState make_initial_state(int n0, int basis, double beta,
                                double hbar_tilde) {
  if (!is_power_of_two(basis) || basis < 4)
    throw ConfigError("basis: must be a power of two >= 4");
  if (std::abs(n0) >= basis / 2)
    throw ConfigError("n0: initial level outside the momentum basis");
  if (!(beta >= 0.0 && beta < 1.0))
    throw ConfigError("beta: must be in [0, 1)");
  if (!(hbar_tilde > 0.0))
    throw ConfigError("hbar_tilde: must be positive");
  QuantumState s;
  s.amps.assign(static_cast<std::size_t>(basis), {0.0, 0.0});
  s.amps[static_cast<std::size_t>(n_to_fft_index(n0, basis))] = {1.0, 0.0};
  s.beta = beta;
  s.hbar_tilde = hbar_tilde;
  return s;
}

GridDiagnostic grid_guard(const QuantumState& state) {
  const int n_basis = state.basis_size();
  double pop = 0.0;
  for (int i = 0; i < n_basis; ++i) {
    const int n = fft_index_to_n(i, n_basis);
    // outer 10% band: |n| >= 0.45 * N, in exact integer arithmetic
    if (20 * std::abs(n) >= 9 * n_basis) pop += std::norm(state.amps[i]);
  }
  return {pop, pop < kEdgePopulationLimit};
}

double free_phase_angle(int n, double beta, double hbar_tilde) {
  const double x = n + beta;
  return x * x * hbar_tilde / 2.0;
}

std::complex<double> resonance_phase(int n, double beta, ResonanceOrder r) {
  // frac of (nu/mu)*(n+beta)^2: the integer part nu*n^2 is reduced mod mu
  // exactly so no precision is lost at large |n|.
  const std::int64_t nn = static_cast<std::int64_t>(n) * n;
  const std::int64_t rem = (static_cast<std::int64_t>(r.nu) * nn) % r.mu;
  const double x =
      (static_cast<double>(rem) + r.nu * (2.0 * n * beta + beta * beta)) / r.mu;
  return unit_phase(x - std::floor(x));
}

Propagator::Propagator(int basis)
    : basis_(basis), fft_(static_cast<std::size_t>(basis)) {
  if (!is_power_of_two(basis) || basis < 4)
    throw ConfigError("basis: must be a power of two >= 4");
}

void Propagator::apply_kick(QuantumState& state, const Potential& v,
                            double strength) {
  const int n_basis = basis_;
  auto* b = fft_.data();
  std::copy(state.amps.begin(), state.amps.end(), b);
  fft_.to_position();
  for (int j = 0; j < n_basis; ++j) {
    const double q = kTwoPi * j / n_basis;
    b[j] *= std::polar(1.0, -strength * v.eval(q));
  }
  fft_.to_momentum();
  std::copy(b, b + n_basis, state.amps.begin());
}

void Propagator::apply_free(QuantumState& state, int sign) {
  const int n_basis = basis_;
  for (int i = 0; i < n_basis; ++i) {
    const int n = fft_index_to_n(i, n_basis);
    const double angle = free_phase_angle(n, state.beta, state.hbar_tilde);
    state.amps[i] *= std::polar(1.0, -sign * angle);
  }
}

void Propagator::apply_resonance_phase(QuantumState& state, ResonanceOrder r) {
  const int n_basis = basis_;
  for (int i = 0; i < n_basis; ++i)
    state.amps[i] *= resonance_phase(fft_index_to_n(i, n_basis), state.beta, r);
}

void Propagator::ensure_tables(const ScaledParams& params, const Potential& vk,
                               const Potential& vl, const QuantumState& state) {
  TableKey key{params, vk, vl, state.beta, state.hbar_tilde, true};
  if (key_.valid && key_ == key) return;

  const int n_basis = basis_;
  kick_k_.resize(n_basis);
  kick_l_.resize(n_basis);
  free_plus_.resize(n_basis);
  free_minus_.resize(n_basis);
  res_.resize(n_basis);
  const double sk = params.k_tilde / state.hbar_tilde;
  const double sl = params.l_tilde / state.hbar_tilde;
  for (int j = 0; j < n_basis; ++j) {
    const double q = kTwoPi * j / n_basis;
    kick_k_[j] = std::polar(1.0, -sk * vk.eval(q));
    kick_l_[j] = std::polar(1.0, -sl * vl.eval(q));
  }
  for (int i = 0; i < n_basis; ++i) {
    const int n = fft_index_to_n(i, n_basis);
    const double angle = free_phase_angle(n, state.beta, state.hbar_tilde);
    free_plus_[i] = std::polar(1.0, -angle);
    free_minus_[i] = std::conj(free_plus_[i]);
    res_[i] = resonance_phase(n, state.beta, params.resonance);
  }
  key_ = std::move(key);
}

void Propagator::ratchet_step(QuantumState& state, const ScaledParams& params,
                              const Potential& vk, const Potential& vl) {
  ensure_tables(params, vk, vl, state);
  const int n_basis = basis_;
  auto* b = fft_.data();
  std::copy(state.amps.begin(), state.amps.end(), b);

  fft_.to_position();
  for (int j = 0; j < n_basis; ++j) b[j] *= kick_k_[j];
  fft_.to_momentum();
  for (int i = 0; i < n_basis; ++i) b[i] *= free_plus_[i];
  fft_.to_position();
  for (int j = 0; j < n_basis; ++j) b[j] *= kick_l_[j];
  fft_.to_momentum();
  for (int i = 0; i < n_basis; ++i) b[i] = b[i] * free_minus_[i] * res_[i];

  std::copy(b, b + n_basis, state.amps.begin());
}

}  // namespace dkra
