#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "qdarp/field.hpp"
#include "qdarp/types.hpp"

namespace qdarp {

// Dressed-basis relaxation rates for the instantaneous splitting
// Lambda = sqrt(Omega^2 + Delta^2):
//   J(L)  = A L^3 exp(-L^2/wc^2)
//   down  = (pi/2) J(L) (Omega/L)^2 (nbar+1)   (upper -> lower dressed)
//   up    = (pi/2) J(L) (Omega/L)^2  nbar
//   deph  = 0 in this model
// Detailed balance up/down = nbar/(nbar+1) holds by construction.
struct PhononRates {
  double down_psinv = 0.0;
  double up_psinv = 0.0;
  double dephase_psinv = 0.0;
};

PhononRates phonon_rates(double omega_abs_psinv, double delta_inst_psinv,
                         const PhononSpec& bath);

struct SolverParams {
  double dt_ps = 0.0;      // 0 = auto: min(tau0/200, 2pi/(50 Lambda_max))
  std::size_t stride = 1;  // record every stride-th step; 0 = endpoints only
};

// Time-resolved state of the two-level emitter, ground state |0> at t0.
// rho is row-major [rho00, rho01, rho10, rho11] in the omega0 frame.
// Bloch components: sx = 2 Re rho10, sy = 2 Im rho10, sz = rho11 - rho00
// (south pole = ground). Dressed energies and the adiabaticity ratio
// r = |Delta dOmega/dt - Omega dDelta/dt| / (Omega^2+Delta^2)^(3/2) are
// evaluated on the same samples; NaN where the envelope phase is undefined.
struct Trajectory {
  std::vector<double> t_ps;
  std::vector<std::array<std::complex<double>, 4>> rho;
  std::vector<std::array<double, 3>> bloch;
  std::vector<double> occupation;
  std::vector<double> e_plus_mev;
  std::vector<double> e_minus_mev;
  std::vector<double> adiabaticity;
  double final_occupation = 0.0;
  double dt_ps = 0.0;  // actual step used
};

// Fixed-step RK4 integration of the master equation
//   d rho/dt = -i/hbar [H, rho] + dissipators,
//   H = (hbar/2)(Omega(t) sigma+ + Omega*(t) sigma-),
// with dissipators re-dressed every step from (|Omega|, Delta_inst).
// The drive is resampled onto the solver grid by zero-padding the
// spectrum (exact for band-limited data), and integration is confined to
// the envelope's support. Throws NumericError if params.dt_ps exceeds
// 2pi/(20 Lambda_max), reporting the required step.
Trajectory propagate(const SampledField& field, const EmitterConfig& emitter,
                     const SolverParams& params = {});

enum class PhononSetting { off, on, both };

// Final occupation versus pulse area at fixed shaping. Areas in units of
// pi, non-negative and non-decreasing. occupation holds the bare-emitter
// curve (settings off/both), occupation_on the phonon-coupled one
// (on/both, requires emitter.phonon); the other stays empty.
struct AreaCurve {
  std::vector<double> theta_pi;
  std::vector<double> occupation;
  std::vector<double> occupation_on;
};

AreaCurve occupation_vs_area(const PulseSpec& base, const EmitterConfig& emitter,
                             const SimGrid& grid,
                             const std::vector<double>& areas_pi,
                             PhononSetting setting = PhononSetting::off,
                             int jobs = 0);

}  // namespace qdarp
