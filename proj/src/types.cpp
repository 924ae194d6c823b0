#include "qdarp/types.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdarp/errors.hpp"
#include "qdarp/pulse_math.hpp"
#include "qdarp/units.hpp"

namespace qdarp {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void bad(const std::string& field, const std::string& constraint) {
  throw ConfigError(field + ": " + constraint);
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Temporal intensity FWHM of the notch kernel: the hole subtracts a
// Gaussian whose time-domain width grows as the notch narrows.
double hole_time_scale_ps(const PulseSpec& p) {
  if (p.hole_depth <= 0.0 || p.hole_fwhm_mev <= 0.0) return 0.0;
  const double half_nu = mev_to_angular(0.5 * p.hole_fwhm_mev);
  return 2.0 * std::numbers::sqrt2 * kLn2 / half_nu;
}

}  // namespace

void PulseSpec::validate() const {
  if (!(fwhm_ps > 0.0)) bad("pulse.fwhm_ps", "must be > 0");
  if (!(area_pi >= 0.0)) bad("pulse.area_pi", "must be >= 0");
  if (!std::isfinite(chirp_ps2)) bad("pulse.chirp_ps2", "must be finite");
  if (!std::isfinite(detuning_mev)) bad("pulse.detuning_mev", "must be finite");
  if (!(hole_fwhm_mev >= 0.0)) bad("mask.hole_fwhm_mev", "must be >= 0");
  if (!(hole_depth >= 0.0 && hole_depth <= 1.0))
    bad("mask.hole_depth", "must be within [0, 1]");
}

void PhononSpec::validate() const {
  if (!(coupling_ps2 >= 0.0)) bad("phonon.coupling_ps2", "must be >= 0");
  if (!(cutoff_psinv > 0.0)) bad("phonon.cutoff_psinv", "must be > 0");
  if (!(temperature_k >= 0.0)) bad("phonon.temperature_k", "must be >= 0");
}

void EmitterConfig::validate() const {
  if (!(transition_energy_mev > 0.0)) bad("emitter.energy_mev", "must be > 0");
  if (!(dipole_scale > 0.0)) bad("emitter.dipole_scale", "must be > 0");
  if (phonon) phonon->validate();
}

double SimGrid::dnu_psinv() const { return kTwoPi / window_ps(); }

double SimGrid::time_at(std::size_t i) const {
  return (static_cast<double>(i) - static_cast<double>(n_samples / 2)) * dt_ps;
}

double SimGrid::nu_at(std::size_t k) const {
  return (static_cast<double>(k) - static_cast<double>(n_samples / 2)) *
         dnu_psinv();
}

void SimGrid::validate() const {
  if (!power_of_two(n_samples)) bad("grid.n_samples", "must be a power of two");
  if (n_samples < 16) bad("grid.n_samples", "must be >= 16");
  if (!(dt_ps > 0.0)) bad("grid.dt_ps", "must be > 0");
}

void SimGrid::validate_for(const PulseSpec& pulse) const {
  validate();
  const double tau_s = stretched_duration(pulse.chirp_ps2, pulse.fwhm_ps);
  if (window_ps() < 8.0 * tau_s) {
    std::ostringstream msg;
    msg << "grid too small: time window " << window_ps()
        << " ps < 8x stretched duration (" << 8.0 * tau_s << " ps)";
    throw NumericError(msg.str());
  }
  const double spectral_fwhm = 4.0 * kLn2 / pulse.fwhm_ps;
  const double span = kTwoPi / dt_ps;
  if (span < 6.0 * spectral_fwhm) {
    std::ostringstream msg;
    msg << "grid too small: frequency span " << span
        << " ps^-1 < 6x spectral FWHM (" << 6.0 * spectral_fwhm << " ps^-1)";
    throw NumericError(msg.str());
  }
}

SimGrid SimGrid::for_pulse(const PulseSpec& pulse, std::size_t n_samples,
                           double window_factor) {
  pulse.validate();
  if (!(window_factor > 0.0)) bad("grid.window_factor", "must be > 0");
  const double tau_s = stretched_duration(pulse.chirp_ps2, pulse.fwhm_ps);
  const double slowest = std::max(tau_s, hole_time_scale_ps(pulse));
  SimGrid g;
  g.n_samples = n_samples;
  g.dt_ps = window_factor * slowest / static_cast<double>(n_samples);
  g.validate_for(pulse);
  return g;
}

}  // namespace qdarp
