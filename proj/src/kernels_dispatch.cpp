#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qdarp/kernels.hpp"

namespace qdarp::kernels {

#ifdef QDARP_HAVE_AVX2
const Ops& avx2_ops();  // kernels_avx2.cpp
#endif

bool avx2_available() {
#ifdef QDARP_HAVE_AVX2
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

std::atomic<const Ops*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const Ops* pick_initial() {
  Backend want = avx2_available() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("QDARP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) want = Backend::scalar;
    // "avx2"/"auto" keep the capability-based choice
  }
  g_backend.store(want);
#ifdef QDARP_HAVE_AVX2
  if (want == Backend::avx2) return &avx2_ops();
#endif
  return &scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = pick_initial();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

Backend active_backend() {
  active_ops();
  return g_backend.load();
}

bool force_backend(Backend b) {
  if (b == Backend::avx2) {
#ifdef QDARP_HAVE_AVX2
    if (!avx2_available()) return false;
    g_active.store(&avx2_ops());
    g_backend.store(b);
    return true;
#else
    return false;
#endif
  }
  g_active.store(&scalar_ops());
  g_backend.store(b);
  return true;
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace qdarp::kernels
