#pragma once

#include <complex>
#include <cstddef>

namespace dkra {

// Fixed-size complex transform between the momentum ladder and the uniform
// position grid q_j = 2*pi*j/N, operating on an internal FFTW-aligned buffer.
//
// Convention (fixed once for the whole artifact): momenta are stored in FFT
// order, n = m for m < N/2 and n = m - N otherwise, and
//
//   to_position:  u_j = sum_m c_m exp(+2*pi*i*j*m/N)
//   to_momentum:  c_m = (1/N) sum_j u_j exp(-2*pi*i*j*m/N)
//
// so the pair composes to the identity. Plans use FFTW_ESTIMATE, which picks
// the same algorithm for a given size and alignment on every run; results are
// therefore reproducible bit-for-bit across runs and across worker threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  std::complex<double>* data() { return buf_; }
  const std::complex<double>* data() const { return buf_; }

  void to_position();
  void to_momentum();

 private:
  std::size_t n_ = 0;
  std::complex<double>* buf_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

}  // namespace dkra
