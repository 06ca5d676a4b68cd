#include "dkra/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace dkra {

namespace {
// The FFTW planner mutates global state; plan creation/destruction is
// serialized. Plan execution is thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft: size must be positive");
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
  if (!buf_) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_FORWARD,
                               FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), raw, raw, FFTW_BACKWARD,
                               FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("Fft: planning failed");
}

Fft::~Fft() {
  if (!buf_) return;
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), buf_(other.buf_), plan_fwd_(other.plan_fwd_),
      plan_bwd_(other.plan_bwd_) {
  other.buf_ = nullptr;
  other.plan_fwd_ = other.plan_bwd_ = nullptr;
  other.n_ = 0;
}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    this->~Fft();
    n_ = other.n_;
    buf_ = other.buf_;
    plan_fwd_ = other.plan_fwd_;
    plan_bwd_ = other.plan_bwd_;
    other.buf_ = nullptr;
    other.plan_fwd_ = other.plan_bwd_ = nullptr;
    other.n_ = 0;
  }
  return *this;
}

void Fft::to_position() {
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
}

void Fft::to_momentum() {
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) buf_[i] *= scale;
}

}  // namespace dkra
