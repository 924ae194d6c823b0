#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdarp/errors.hpp"
#include "qdarp/pulse_math.hpp"
#include "qdarp/types.hpp"

using namespace qdarp;

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// Simpson quadrature of a smooth integrand on [a, b].
template <typename F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i)
    acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("temporal chirp matches the closed form at the reference point") {
  // alpha = 2 phi2 / (tau0^4/(2 ln2)^2 + (2 phi2)^2), written out digit by
  // digit here so the library expression is checked against independent
  // arithmetic rather than against itself.
  const double tau0 = 0.110;
  const double phi2 = 0.150;
  const double denom =
      std::pow(tau0, 4) / (4.0 * kLn2 * kLn2) + 4.0 * phi2 * phi2;
  const double expected = 2.0 * phi2 / denom;
  CHECK(temporal_chirp(phi2, tau0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(3.3305).epsilon(2e-4));
}

TEST_CASE("temporal chirp is odd in the spectral phase") {
  for (double phi2 : {0.01, 0.15, 1.0, 40.0}) {
    CHECK(temporal_chirp(-phi2, 0.110) == -temporal_chirp(phi2, 0.110));
  }
  CHECK(temporal_chirp(0.0, 0.110) == 0.0);
}

TEST_CASE("temporal chirp peaks where the two stretch terms balance") {
  const double tau0 = 0.110;
  const double phi2_star = tau0 * tau0 / (4.0 * kLn2);
  const double peak = temporal_chirp(phi2_star, tau0);
  for (double off : {0.7, 0.9, 1.1, 1.4}) {
    CHECK(temporal_chirp(phi2_star * off, tau0) < peak);
  }
  // At the maximum the denominator terms are equal, so alpha = 1/(4 phi2*).
  CHECK(peak == doctest::Approx(0.25 / phi2_star).epsilon(1e-12));
}

TEST_CASE("stretched duration follows the Gaussian GDD law") {
  const double tau0 = 0.110;
  const double phi2 = 0.150;
  const double factor = 4.0 * kLn2 * phi2 / (tau0 * tau0);
  const double expected = tau0 * std::sqrt(1.0 + factor * factor);
  CHECK(stretched_duration(phi2, tau0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(3.7825).epsilon(2e-4));
  // Even in phi2, and reduces to tau0 without dispersion.
  CHECK(stretched_duration(-phi2, tau0) == stretched_duration(phi2, tau0));
  CHECK(stretched_duration(0.0, tau0) == tau0);
}

TEST_CASE("field amplitude reproduces the requested rotation angle") {
  const double tau0 = 0.110;
  for (double theta : {0.5 * kPi, kPi, 2.0 * kPi, 7.0 * kPi}) {
    for (double dip : {1.0, 0.6}) {
      const double e0 = field_amplitude_for_area(theta, tau0, dip);
      const auto envelope = [&](double t) {
        return dip * e0 * std::exp(-2.0 * kLn2 * t * t / (tau0 * tau0));
      };
      // +-10 tau0 captures the Gaussian to far below the tolerance.
      const double area = simpson(envelope, -10.0 * tau0, 10.0 * tau0, 4000);
      CHECK(area == doctest::Approx(theta).epsilon(1e-10));
    }
  }
}

TEST_CASE("pulse validation rejects nonsense inputs") {
  PulseSpec p;
  CHECK_NOTHROW(p.validate());
  p.fwhm_ps = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = PulseSpec{};
  p.area_pi = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = PulseSpec{};
  p.hole_depth = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = PulseSpec{};
  p.hole_fwhm_mev = -0.3;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("simulation grid bookkeeping is self-consistent") {
  PulseSpec p;
  p.chirp_ps2 = 0.15;
  const SimGrid g = SimGrid::for_pulse(p, 4096, 16.0);
  CHECK(g.n_samples == 4096);
  // Window scales with the stretched duration, not the bare one.
  CHECK(g.window_ps() ==
        doctest::Approx(16.0 * stretched_duration(0.15, p.fwhm_ps)));
  CHECK(g.time_at(0) == doctest::Approx(-0.5 * g.window_ps()));
  CHECK(g.time_at(2048) == doctest::Approx(0.0));
  CHECK(g.dnu_psinv() == doctest::Approx(2.0 * kPi / g.window_ps()));
  // Frequencies come out centered after the shift.
  CHECK(g.nu_at(2048) == doctest::Approx(0.0));
  CHECK(g.nu_at(0) == doctest::Approx(-2048 * g.dnu_psinv()));

  SimGrid bad = g;
  bad.n_samples = 1000;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = g;
  bad.dt_ps = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("emitter validation covers the phonon block") {
  EmitterConfig e;
  CHECK_NOTHROW(e.validate());
  e.phonon = PhononSpec{};
  CHECK_NOTHROW(e.validate());
  e.phonon->coupling_ps2 = -0.1;
  CHECK_THROWS_AS(e.validate(), ConfigError);
  e.phonon = PhononSpec{};
  e.phonon->cutoff_psinv = 0.0;
  CHECK_THROWS_AS(e.validate(), ConfigError);
  e.phonon = PhononSpec{};
  e.phonon->temperature_k = -4.0;
  CHECK_THROWS_AS(e.validate(), ConfigError);
  e = EmitterConfig{};
  e.transition_energy_mev = 0.0;
  CHECK_THROWS_AS(e.validate(), ConfigError);
}
