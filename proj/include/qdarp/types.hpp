#pragma once

#include <cstddef>
#include <optional>

namespace qdarp {

// Drive pulse before and after the pulse shaper. The area is the
// rotation angle of the *unmasked* pulse in units of pi; carving the
// spectral hole removes energy without renormalising the area.
struct PulseSpec {
  double fwhm_ps = 0.110;      // transform-limited intensity FWHM
  double area_pi = 1.0;        // theta / pi, >= 0
  double chirp_ps2 = 0.0;      // spectral phase curvature phi2 (GDD)
  double detuning_mev = 0.0;   // hbar*(omega0 - omega_laser)
  double hole_fwhm_mev = 0.0;  // amplitude-notch FWHM (2*delta); 0 = none
  double hole_depth = 1.0;     // in [0, 1]; 1 removes the carrier fully

  void validate() const;  // throws ConfigError naming field + constraint
};

// Super-ohmic phonon bath (deformation-potential acoustic branch).
struct PhononSpec {
  double coupling_ps2 = 0.0272;  // A in J(w) = A w^3 exp(-w^2/wc^2)
  double cutoff_psinv = 2.2;     // wc
  double temperature_k = 4.2;

  void validate() const;
};

struct EmitterConfig {
  double transition_energy_mev = 1059.7;  // hbar*omega0 (1170 nm line)
  double dipole_scale = 1.0;
  std::optional<PhononSpec> phonon;  // engaged when present

  void validate() const;
};

// Uniform time grid t_n = (n - N/2)*dt, n = 0..N-1, with the matching
// angular-frequency grid nu_k = (k - N/2)*dnu, dnu = 2*pi/(N*dt).
// Frequencies are offsets from the emitter transition.
struct SimGrid {
  std::size_t n_samples = 16384;  // power of two
  double dt_ps = 0.0;

  double window_ps() const { return static_cast<double>(n_samples) * dt_ps; }
  double dnu_psinv() const;
  double time_at(std::size_t i) const;
  double nu_at(std::size_t k) const;

  void validate() const;
  // Checks this grid can hold the given pulse: window >= 8x the stretched
  // duration and spectral span >= 6x the intensity FWHM. Throws NumericError.
  void validate_for(const PulseSpec& pulse) const;

  // Grid sized for a pulse: window = window_factor x the slowest temporal
  // scale (stretched duration, or the hole's temporal kernel if wider).
  static SimGrid for_pulse(const PulseSpec& pulse, std::size_t n_samples = 16384,
                           double window_factor = 16.0);
};

}  // namespace qdarp
