#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops used by the shaping pipeline. Every operation
// has a scalar reference implementation; on x86-64 an AVX2 variant is
// selected at runtime when the CPU supports it. Pointwise kernels are
// bit-identical between backends (no FMA contraction); reductions may
// differ by accumulation order within a few ulp.

namespace qdarp::kernels {

using cplx = std::complex<double>;

struct Ops {
  // a[i] *= b[i]
  void (*cmul)(cplx* a, const cplx* b, std::size_t n);
  // a[i] *= s
  void (*scale)(cplx* a, double s, std::size_t n);
  // out[i] = |a[i]|^2
  void (*abs2)(const cplx* a, double* out, std::size_t n);
  // out[i] = |a[i]| = sqrt(re^2 + im^2)
  void (*abs_mag)(const cplx* a, double* out, std::size_t n);
  // sum |a[i]|^2
  double (*sum_abs2)(const cplx* a, std::size_t n);
  // sum x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum a[i]
  cplx (*csum)(const cplx* a, std::size_t n);
  // max |a[i]|^2  (0 for empty input)
  double (*max_abs2)(const cplx* a, std::size_t n);
};

enum class Backend { scalar, avx2 };

const Ops& scalar_ops();

// Active backend: AVX2 when available unless QDARP_SIMD=scalar is set in
// the environment (checked once). QDARP_SIMD=avx2 on a CPU without AVX2
// falls back to scalar.
const Ops& active_ops();
Backend active_backend();
const char* backend_name(Backend b);

// Test hook; returns false if the backend is unavailable on this machine.
bool force_backend(Backend b);

bool avx2_available();

}  // namespace qdarp::kernels
