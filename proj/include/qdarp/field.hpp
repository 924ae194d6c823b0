#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qdarp/types.hpp"

namespace qdarp {

// A pulse sampled on a SimGrid, held in both domains simultaneously.
// The complex Rabi envelope lives in the frame rotating at the emitter
// transition omega0; laser detuning and chirp sit in its phase. Units:
// envelope in ps^-1 (Rabi), spectrum in ps^-1 * ps = dimensionless*ps.
struct SampledField {
  SimGrid grid;
  std::vector<std::complex<double>> envelope;  // vs t
  std::vector<std::complex<double>> spectrum;  // vs nu = omega - omega0
  double center_offset_psinv = 0.0;            // omega_laser - omega0

  double energy() const;    // sum |envelope|^2 dt
  double peak_rabi() const; // max |envelope|
};

// Gaussian amplitude notch + quadratic phase, both centered on the
// emitter (nu = 0), applied multiplicatively to the field spectrum.
struct MaskSpec {
  double hole_fwhm_mev = 0.0;
  double hole_depth = 1.0;
  double chirp_ps2 = 0.0;

  static MaskSpec from_pulse(const PulseSpec& p) {
    return {p.hole_fwhm_mev, p.hole_depth, p.chirp_ps2};
  }

  // A(nu) = 1 - depth * exp(-ln2 * nu^2 / dnu_half^2), dnu_half = half FWHM.
  // Identity when depth or width is zero.
  double amplitude(double nu_psinv) const;
  // Phi(nu) = (phi2/2) * nu^2
  double phase(double nu_psinv) const;

  void validate() const;
};

// Build the shaped field for a PulseSpec: analytic Gaussian spectrum at
// the laser center, then the mask, then an inverse transform. With
// hole_depth*hole_fwhm = 0 and chirp = 0 this is the transform-limited
// pulse with real positive spectrum.
SampledField synthesize(const PulseSpec& pulse, const EmitterConfig& emitter,
                        const SimGrid& grid);

// Multiply the spectrum by the mask and recompute the envelope. A depth-0
// (or width-0) hole with zero phase returns the input unchanged.
SampledField apply_mask(const SampledField& field, const MaskSpec& mask);

// |Omega|(t) and the instantaneous detuning Delta_inst(t) = d(arg Omega)/dt,
// by centered differences of the unwrapped phase. Samples below the 1e-6
// relative amplitude floor, or across a phase slip (|jump| > pi/2, i.e. an
// envelope zero crossing), are flagged invalid; delta_inst is NaN there.
struct InstantaneousProfile {
  std::vector<double> t_ps;
  std::vector<double> omega_abs_psinv;
  std::vector<double> delta_inst_psinv;
  std::vector<std::uint8_t> valid;
};

InstantaneousProfile instantaneous_profile(const SampledField& field);

// Same extraction over an arbitrary contiguous run of samples (the
// propagator applies it on its refined grid). peak_rabi fixes the
// amplitude floor; t0_ps is the time of env[0].
InstantaneousProfile instantaneous_profile_range(
    const std::complex<double>* env, std::size_t count, double t0_ps,
    double dt_ps, double peak_rabi);

// Normalized intensity autocorrelation G(tau) = int I(t) I(t+tau) dt / G(0),
// via the lag-domain product of the intensity transform. Symmetric, G(0)=1.
struct Autocorrelation {
  std::vector<double> delay_ps;
  std::vector<double> g;
};

Autocorrelation autocorrelation(const SampledField& field);

// magnitude = int |Omega| dt  (insensitive to phase structure)
// coherent  = |int Omega dt|  (what a resonant rotation actually sees;
//                              exactly zero for a depth-1 hole)
struct EffectiveAreas {
  double magnitude_rad = 0.0;
  double coherent_rad = 0.0;
};

EffectiveAreas effective_areas(const SampledField& field);

}  // namespace qdarp
