#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "qdarp/kernels.hpp"

using namespace qdarp;
using cd = std::complex<double>;

namespace {

std::vector<cd> random_complex(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<cd> v(n);
  for (auto& x : v) x = {dist(gen), dist(gen)};
  return v;
}

bool bitwise_equal(const void* a, const void* b, std::size_t doubles) {
  return std::memcmp(a, b, doubles * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("pointwise kernels match the scalar reference bit for bit") {
  const auto& ref = kernels::scalar_ops();
  const auto& act = kernels::active_ops();
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{2},
                        std::size_t{3}, std::size_t{5}, std::size_t{8},
                        std::size_t{15}, std::size_t{17}, std::size_t{1024},
                        std::size_t{1023}}) {
    const auto a = random_complex(n, 7 + static_cast<unsigned>(n));
    const auto b = random_complex(n, 1000 + static_cast<unsigned>(n));

    auto ra = a, sa = a;
    ref.cmul(ra.data(), b.data(), n);
    act.cmul(sa.data(), b.data(), n);
    CHECK(bitwise_equal(ra.data(), sa.data(), 2 * n));

    ra = a;
    sa = a;
    ref.scale(ra.data(), 1.7, n);
    act.scale(sa.data(), 1.7, n);
    CHECK(bitwise_equal(ra.data(), sa.data(), 2 * n));

    std::vector<double> r_ref(n), r_act(n);
    ref.abs2(a.data(), r_ref.data(), n);
    act.abs2(a.data(), r_act.data(), n);
    CHECK(bitwise_equal(r_ref.data(), r_act.data(), n));

    ref.abs_mag(a.data(), r_ref.data(), n);
    act.abs_mag(a.data(), r_act.data(), n);
    CHECK(bitwise_equal(r_ref.data(), r_act.data(), n));
  }
}

TEST_CASE("reduction kernels agree with the scalar reference closely") {
  const auto& ref = kernels::scalar_ops();
  const auto& act = kernels::active_ops();
  for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{64},
                        std::size_t{1000}, std::size_t{4096}}) {
    const auto a = random_complex(n, 42 + static_cast<unsigned>(n));
    std::vector<double> re(n);
    ref.abs2(a.data(), re.data(), n);

    const double s_ref = ref.sum_abs2(a.data(), n);
    const double s_act = act.sum_abs2(a.data(), n);
    CHECK(s_act == doctest::Approx(s_ref).epsilon(1e-13));

    const double t_ref = ref.sum(re.data(), n);
    const double t_act = act.sum(re.data(), n);
    CHECK(t_act == doctest::Approx(t_ref).epsilon(1e-13));

    const cd c_ref = ref.csum(a.data(), n);
    const cd c_act = act.csum(a.data(), n);
    CHECK(std::abs(c_ref - c_act) <= 1e-13 * (1.0 + std::abs(c_ref)));

    // the maximum is an exact selection, not an accumulation
    CHECK(ref.max_abs2(a.data(), n) == act.max_abs2(a.data(), n));
  }
  CHECK(ref.sum_abs2(nullptr, 0) == 0.0);
  CHECK(act.max_abs2(nullptr, 0) == 0.0);
}

TEST_CASE("max_abs2 finds a peak hiding in the tail") {
  const auto& act = kernels::active_ops();
  for (std::size_t n : {std::size_t{5}, std::size_t{64}, std::size_t{67}}) {
    auto a = random_complex(n, 3);
    a[n - 1] = {10.0, -10.0};
    CHECK(act.max_abs2(a.data(), n) == doctest::Approx(200.0));
  }
}

TEST_CASE("backends can be forced and agree") {
  const kernels::Backend initial = kernels::active_backend();
  REQUIRE(kernels::force_backend(kernels::Backend::scalar));
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  const auto a = random_complex(257, 9);
  const auto b = random_complex(257, 10);
  auto out_scalar = a;
  kernels::active_ops().cmul(out_scalar.data(), b.data(), 257);

  if (kernels::avx2_available()) {
    REQUIRE(kernels::force_backend(kernels::Backend::avx2));
    CHECK(kernels::active_backend() == kernels::Backend::avx2);
    auto out_simd = a;
    kernels::active_ops().cmul(out_simd.data(), b.data(), 257);
    CHECK(bitwise_equal(out_scalar.data(), out_simd.data(), 2 * 257));
  } else {
    CHECK_FALSE(kernels::force_backend(kernels::Backend::avx2));
  }
  REQUIRE(kernels::force_backend(initial));
}
