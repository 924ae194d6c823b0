#include "qdarp/fft.hpp"

#include <fftw3.h>

#include <cassert>
#include <cstring>
#include <mutex>

namespace qdarp {

namespace {

// FFTW planning (and destruction) is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// Rotate by N/2: index 0 <-> index N/2. Equal to fftshift for even N.
void shifted_copy(const std::complex<double>* in, std::complex<double>* out,
                  std::size_t n) {
  const std::size_t half = n / 2;
  std::memcpy(out, in + half, half * sizeof(*in));
  std::memcpy(out + half, in, half * sizeof(*in));
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  assert(n % 2 == 0);
  buf_ = fftw_malloc(sizeof(fftw_complex) * n);
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto* b = static_cast<fftw_complex*>(buf_);
  // FFTW_BACKWARD carries the e^{+i} sign of our time->spectrum convention.
  plan_plus_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD,
                                FFTW_ESTIMATE);
  plan_minus_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_plus_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_minus_));
  fftw_free(buf_);
}

void Fft::spectrum_from_time(const std::complex<double>* env,
                             std::complex<double>* spectrum, double dt_ps) {
  auto* b = reinterpret_cast<std::complex<double>*>(buf_);
  shifted_copy(env, b, n_);
  fftw_execute(static_cast<fftw_plan>(plan_plus_));
  shifted_copy(b, spectrum, n_);
  for (std::size_t k = 0; k < n_; ++k) spectrum[k] *= dt_ps;
}

void Fft::time_from_spectrum(const std::complex<double>* spectrum,
                             std::complex<double>* env, double dt_ps) {
  auto* b = reinterpret_cast<std::complex<double>*>(buf_);
  shifted_copy(spectrum, b, n_);
  fftw_execute(static_cast<fftw_plan>(plan_minus_));
  shifted_copy(b, env, n_);
  const double scale = 1.0 / (static_cast<double>(n_) * dt_ps);
  for (std::size_t k = 0; k < n_; ++k) env[k] *= scale;
}

void Fft::raw(bool plus, std::complex<double>* inout) {
  auto* b = reinterpret_cast<std::complex<double>*>(buf_);
  std::memcpy(b, inout, n_ * sizeof(*inout));
  fftw_execute(static_cast<fftw_plan>(plus ? plan_plus_ : plan_minus_));
  std::memcpy(inout, b, n_ * sizeof(*inout));
}

}  // namespace qdarp
