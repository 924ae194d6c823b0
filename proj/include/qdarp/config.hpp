#pragma once

#include <string>

#include "qdarp/types.hpp"

namespace qdarp {

struct GridConfig {
  std::size_t n_samples = 16384;
  double window_factor = 16.0;
};

struct SolverConfig {
  double dt_ps = 0.0;  // 0 = auto
};

// One simulation setup, mirroring the JSON config layout:
// { emitter: {energy_mev, dipole_scale},
//   pulse:   {fwhm_ps, area_pi, chirp_ps2, detuning_mev},
//   mask:    {hole_fwhm_mev, hole_depth},
//   phonon:  {enabled, coupling_ps2, cutoff_psinv, temperature_k},
//   grid:    {n_samples, window_factor},
//   solver:  {dt_ps} }
// Absent keys take defaults; unknown keys are rejected.
struct AppConfig {
  PulseSpec pulse;  // mask fields folded in
  double emitter_energy_mev = 1059.7;
  double dipole_scale = 1.0;
  bool phonon_enabled = false;
  PhononSpec phonon;
  GridConfig grid;
  SolverConfig solver;

  EmitterConfig emitter(bool with_phonons) const;
  SimGrid make_grid() const;
  void validate() const;
};

AppConfig parse_config(const std::string& json_text);
AppConfig load_config(const std::string& path);

// Canonical serialization: fixed key order, %.12g numbers. Stable input
// for hashing and idempotent under parse/dump round trips.
std::string dump_config(const AppConfig& cfg);

// FNV-1a 64-bit over the canonical form, as 16 hex digits.
std::string config_hash(const AppConfig& cfg);

}  // namespace qdarp
