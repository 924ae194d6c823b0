#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdarp/config.hpp"

namespace qdarp {

enum class SweepAxis { area, chirp, hole, temperature };

const char* axis_name(SweepAxis a);

struct AxisSpec {
  SweepAxis axis;
  std::vector<double> values;

  // "area=0:6pi:61" (inclusive linspace; a pi suffix is cosmetic, areas are
  // always in units of pi) or "chirp=0,0.05,0.1,0.15". Throws ConfigError.
  static AxisSpec parse(const std::string& text);
};

struct SweepConfig {
  AppConfig base;
  std::vector<AxisSpec> axes;  // 1..3, unique axes
  bool phonon_toggle = false;  // run every point with and without phonons
  std::size_t budget = 100000; // max grid points, refused up front
  int jobs = 0;                // 0 = QDARP_JOBS env or hardware

  void validate() const;
};

// Row-major occupation tensor over the axis grid. On phonon_toggle both
// tensors are filled, otherwise the one matching base.phonon_enabled.
// Per-point failures are recorded and leave NaN entries; they do not
// abort the sweep. Results are independent of the job count.
struct SweepResult {
  std::vector<AxisSpec> axes;
  std::vector<std::size_t> shape;
  std::vector<double> occupation_off;
  std::vector<double> occupation_on;
  std::vector<std::string> errors;  // "" = ok, per grid point
  std::string config_hash;
  std::string code_version;
  AppConfig base;
  bool phonon_toggle = false;
};

SweepResult run_sweep(const SweepConfig& cfg);

// CSV: header theta_pi,chirp_ps2,hole_mev,temp_k,phonons,occupation; one
// row per grid point per phonon setting, 12 significant digits,
// byte-stable for identical inputs.
void emit_csv(const SweepResult& result, std::ostream& out);

// JSON with axes, tensors, per-point errors and {config_hash, code_version}.
void emit_json(const SweepResult& result, std::ostream& out);
SweepResult sweep_from_json(const std::string& json_text);

}  // namespace qdarp
