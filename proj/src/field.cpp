#include "qdarp/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qdarp/errors.hpp"
#include "qdarp/fft.hpp"
#include "qdarp/kernels.hpp"
#include "qdarp/pulse_math.hpp"
#include "qdarp/units.hpp"

namespace qdarp {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;
constexpr double kAmplitudeFloor = 1e-6;  // relative, for phase extraction
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double SampledField::energy() const {
  return kernels::active_ops().sum_abs2(envelope.data(), envelope.size()) *
         grid.dt_ps;
}

double SampledField::peak_rabi() const {
  return std::sqrt(kernels::active_ops().max_abs2(envelope.data(),
                                                  envelope.size()));
}

void MaskSpec::validate() const {
  if (!(hole_fwhm_mev >= 0.0))
    throw ConfigError("mask.hole_fwhm_mev: must be >= 0");
  if (!(hole_depth >= 0.0 && hole_depth <= 1.0))
    throw ConfigError("mask.hole_depth: must be within [0, 1]");
  if (!std::isfinite(chirp_ps2))
    throw ConfigError("mask.chirp_ps2: must be finite");
}

double MaskSpec::amplitude(double nu_psinv) const {
  if (hole_depth <= 0.0 || hole_fwhm_mev <= 0.0) return 1.0;
  const double half_nu = mev_to_angular(0.5 * hole_fwhm_mev);
  const double x = nu_psinv / half_nu;
  return 1.0 - hole_depth * std::exp(-kLn2 * x * x);
}

double MaskSpec::phase(double nu_psinv) const {
  return 0.5 * chirp_ps2 * nu_psinv * nu_psinv;
}

SampledField synthesize(const PulseSpec& pulse, const EmitterConfig& emitter,
                        const SimGrid& grid) {
  pulse.validate();
  emitter.validate();
  grid.validate_for(pulse);

  const double theta = pulse.area_pi * kPi;
  const double rabi_peak =
      field_amplitude_for_area(theta, pulse.fwhm_ps, emitter.dipole_scale) *
      emitter.dipole_scale;
  const double sigma_t = pulse.fwhm_ps / (2.0 * std::sqrt(kLn2));
  const double amp = rabi_peak * std::sqrt(2.0 * kPi) * sigma_t;
  const double nu_center = -mev_to_angular(pulse.detuning_mev);

  SampledField field;
  field.grid = grid;
  field.center_offset_psinv = nu_center;
  const std::size_t n = grid.n_samples;
  field.spectrum.resize(n);
  field.envelope.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = grid.nu_at(k) - nu_center;
    field.spectrum[k] = amp * std::exp(-0.5 * sigma_t * sigma_t * d * d);
  }
  Fft fft(n);
  fft.time_from_spectrum(field.spectrum.data(), field.envelope.data(),
                         grid.dt_ps);
  return apply_mask(field, MaskSpec::from_pulse(pulse));
}

SampledField apply_mask(const SampledField& field, const MaskSpec& mask) {
  mask.validate();
  field.grid.validate();
  SampledField out = field;
  const bool no_hole = mask.hole_depth <= 0.0 || mask.hole_fwhm_mev <= 0.0;
  if (no_hole && mask.chirp_ps2 == 0.0) return out;

  const std::size_t n = field.grid.n_samples;
  std::vector<std::complex<double>> m(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double nu = field.grid.nu_at(k);
    m[k] = std::polar(mask.amplitude(nu), mask.phase(nu));
  }
  kernels::active_ops().cmul(out.spectrum.data(), m.data(), n);
  Fft fft(n);
  fft.time_from_spectrum(out.spectrum.data(), out.envelope.data(),
                         field.grid.dt_ps);
  return out;
}

InstantaneousProfile instantaneous_profile_range(
    const std::complex<double>* env, std::size_t count, double t0_ps,
    double dt_ps, double peak_rabi) {
  const std::size_t n = count;
  if (n == 0) throw std::invalid_argument("empty field");
  if (peak_rabi <= 0.0) throw std::invalid_argument("field has zero energy");
  InstantaneousProfile prof;
  prof.t_ps.resize(n);
  prof.omega_abs_psinv.resize(n);
  prof.delta_inst_psinv.assign(n, kNan);
  prof.valid.assign(n, 0);

  const auto& ops = kernels::active_ops();
  ops.abs_mag(env, prof.omega_abs_psinv.data(), n);
  for (std::size_t i = 0; i < n; ++i) prof.t_ps[i] = t0_ps + dt_ps * i;

  const double floor = kAmplitudeFloor * peak_rabi;

  std::vector<std::uint8_t> above(n);
  for (std::size_t i = 0; i < n; ++i)
    above[i] = prof.omega_abs_psinv[i] >= floor ? 1 : 0;

  // Unwrapped phase inside each contiguous above-floor run; a jump beyond
  // pi/2 between neighbours marks an envelope zero crossing, where the
  // derivative is meaningless.
  std::vector<double> phase(n, 0.0);
  std::vector<std::uint8_t> clean_step(n, 0);  // pair (i, i+1) usable
  const double dt = dt_ps;

  std::size_t i = 0;
  while (i < n) {
    if (!above[i]) {
      ++i;
      continue;
    }
    std::size_t run_end = i;  // inclusive
    phase[i] = std::arg(env[i]);
    while (run_end + 1 < n && above[run_end + 1]) {
      const std::size_t j = run_end + 1;
      double raw = std::arg(env[j]);
      double prev = phase[j - 1];
      double d = raw - std::fmod(prev, 2.0 * kPi);
      d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
      phase[j] = prev + d;
      clean_step[j - 1] = std::abs(d) <= 0.5 * kPi ? 1 : 0;
      run_end = j;
    }
    for (std::size_t j = i; j <= run_end; ++j) {
      const bool left = j > i && clean_step[j - 1];
      const bool right = j < run_end && clean_step[j];
      if (left && right)
        prof.delta_inst_psinv[j] = (phase[j + 1] - phase[j - 1]) / (2.0 * dt);
      else if (right)
        prof.delta_inst_psinv[j] = (phase[j + 1] - phase[j]) / dt;
      else if (left)
        prof.delta_inst_psinv[j] = (phase[j] - phase[j - 1]) / dt;
      else
        continue;
      prof.valid[j] = 1;
    }
    i = run_end + 1;
  }
  return prof;
}

InstantaneousProfile instantaneous_profile(const SampledField& field) {
  const std::size_t n = field.grid.n_samples;
  if (n == 0) throw std::invalid_argument("empty field");
  return instantaneous_profile_range(field.envelope.data(), n,
                                     field.grid.time_at(0), field.grid.dt_ps,
                                     field.peak_rabi());
}

Autocorrelation autocorrelation(const SampledField& field) {
  const std::size_t n = field.grid.n_samples;
  std::vector<double> intensity(n);
  kernels::active_ops().abs2(field.envelope.data(), intensity.data(), n);

  std::vector<std::complex<double>> work(n);
  for (std::size_t idx = 0; idx < n; ++idx) work[idx] = intensity[idx];
  Fft fft(n);
  fft.raw(false, work.data());  // e^{-i}
  for (auto& w : work) w = std::norm(w);
  fft.raw(true, work.data());   // e^{+i}; now N * circular correlation

  const double c0 = work[0].real();
  if (!(c0 > 0.0)) throw std::invalid_argument("field has zero energy");

  Autocorrelation ac;
  ac.delay_ps.resize(n);
  ac.g.resize(n);
  const std::size_t half = n / 2;
  for (std::size_t j = 0; j < n; ++j) {
    ac.delay_ps[j] = field.grid.time_at(j);
    ac.g[j] = work[(j + half) % n].real() / c0;
  }
  return ac;
}

EffectiveAreas effective_areas(const SampledField& field) {
  const auto& ops = kernels::active_ops();
  const std::size_t n = field.grid.n_samples;
  std::vector<double> mag(n);
  ops.abs_mag(field.envelope.data(), mag.data(), n);
  EffectiveAreas areas;
  areas.magnitude_rad = ops.sum(mag.data(), n) * field.grid.dt_ps;
  areas.coherent_rad =
      std::abs(ops.csum(field.envelope.data(), n)) * field.grid.dt_ps;
  return areas;
}

}  // namespace qdarp
