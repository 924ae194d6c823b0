#pragma once

// Closed-form relations for Gaussian pulses sent through a quadratic
// spectral phase phi2 (GDD, ps^2). tau0 is the transform-limited intensity
// FWHM in ps; areas are rotation angles in rad.

namespace qdarp {

// Linear temporal chirp alpha (ps^-2) imprinted by spectral phase phi2.
// Odd in phi2; rises to a maximum at phi2 = tau0^2/(4 ln 2), then falls.
double temporal_chirp(double phi2_ps2, double tau0_ps);

// Intensity-FWHM duration of the stretched pulse (ps). Monotone in |phi2|.
double stretched_duration(double phi2_ps2, double tau0_ps);

// Peak field scale E0 such that the time-integrated Rabi envelope
// dipole_scale * E0 * exp(-2 ln2 t^2/tau0^2) has area theta_rad.
double field_amplitude_for_area(double theta_rad, double tau0_ps,
                                double dipole_scale = 1.0);

}  // namespace qdarp
