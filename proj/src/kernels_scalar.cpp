#include "qdarp/kernels.hpp"

#include <cmath>

// Reference implementations. Compiled with -ffp-contract=off so the AVX2
// variants (which use explicit mul/add, no FMA) can match bit for bit on
// the pointwise operations.

namespace qdarp::kernels {

namespace {

void cmul_scalar(cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    a[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void scale_scalar(cplx* a, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = {a[i].real() * s, a[i].imag() * s};
}

void abs2_scalar(const cplx* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = re * re + im * im;
  }
}

void abs_mag_scalar(const cplx* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

double sum_abs2_scalar(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

cplx csum_scalar(const cplx* a, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real();
    im += a[i].imag();
  }
  return {re, im};
}

double max_abs2_scalar(const cplx* a, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    const double v = re * re + im * im;
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {cmul_scalar,     scale_scalar, abs2_scalar,
                          abs_mag_scalar,  sum_abs2_scalar, sum_scalar,
                          csum_scalar,     max_abs2_scalar};
  return ops;
}

}  // namespace qdarp::kernels
