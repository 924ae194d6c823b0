#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qdarp {

// Centered discrete transform pair on the SimGrid layout (t=0 and nu=0 at
// index N/2):
//
//   spectrum(nu_k) = dt  * sum_n env(t_n)  exp(+i nu_k t_n)
//   env(t_n)       = dnu/(2 pi) * sum_k spectrum(nu_k) exp(-i nu_k t_n)
//
// so a positive quadratic spectral phase produces an instantaneous
// frequency that rises in time. Backed by FFTW3 (FFTW_ESTIMATE plans on
// aligned scratch -> reproducible results; planning is mutex-guarded, so
// instances may live on different threads).
class Fft {
 public:
  explicit Fft(std::size_t n);  // n even
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }

  void spectrum_from_time(const std::complex<double>* env,
                          std::complex<double>* spectrum, double dt_ps);
  void time_from_spectrum(const std::complex<double>* spectrum,
                          std::complex<double>* env, double dt_ps);

  // Unshifted DFT of the scratch layout FFTW uses natively; exposed for
  // lag-domain work (correlations) where the shift cancels.
  // plus: sum_n x[n] e^{+2 pi i nk/N};  minus: e^{-2 pi i nk/N}.
  void raw(bool plus, std::complex<double>* inout);

 private:
  std::size_t n_;
  void* buf_;         // fftw_complex*
  void* plan_plus_;   // fftw_plan
  void* plan_minus_;  // fftw_plan
};

}  // namespace qdarp
