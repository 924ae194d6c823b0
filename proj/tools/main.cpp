#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdarp/analysis.hpp"
#include "qdarp/config.hpp"
#include "qdarp/dynamics.hpp"
#include "qdarp/errors.hpp"
#include "qdarp/field.hpp"
#include "qdarp/sweep.hpp"
#include "qdarp/units.hpp"
#include "qdarp/version.hpp"

namespace {

using namespace qdarp;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

// Options shared by every subcommand; unset values fall back to the config
// file (if any), then to the built-in defaults.
struct Common {
  std::string config_path;
  std::optional<double> area, chirp, fwhm, detuning;
  std::optional<double> hole_fwhm, hole_depth;
  std::optional<double> temperature, dt, window_factor;
  std::optional<std::size_t> samples;
  std::string phonons;  // "on" | "off" | ""
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON config file");
  cmd->add_option("--area", c.area, "pulse area in units of pi");
  cmd->add_option("--chirp", c.chirp, "spectral phase curvature phi2 [ps^2]");
  cmd->add_option("--fwhm", c.fwhm, "transform-limited intensity FWHM [ps]");
  cmd->add_option("--detuning", c.detuning, "laser detuning from the line [meV]");
  cmd->add_option("--hole-fwhm", c.hole_fwhm, "spectral hole FWHM [meV], 0 = none");
  cmd->add_option("--hole-depth", c.hole_depth, "hole depth in [0, 1]");
  cmd->add_option("--phonons", c.phonons, "phonon coupling: on or off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--temperature", c.temperature, "bath temperature [K]");
  cmd->add_option("--dt", c.dt, "solver step [ps], 0 = automatic");
  cmd->add_option("--samples", c.samples, "grid samples (power of two)");
  cmd->add_option("--window-factor", c.window_factor,
                  "time window as a multiple of the pulse scale");
}

AppConfig build_config(const Common& c) {
  AppConfig cfg =
      c.config_path.empty() ? AppConfig{} : load_config(c.config_path);
  if (c.area) cfg.pulse.area_pi = *c.area;
  if (c.chirp) cfg.pulse.chirp_ps2 = *c.chirp;
  if (c.fwhm) cfg.pulse.fwhm_ps = *c.fwhm;
  if (c.detuning) cfg.pulse.detuning_mev = *c.detuning;
  if (c.hole_fwhm) cfg.pulse.hole_fwhm_mev = *c.hole_fwhm;
  if (c.hole_depth) cfg.pulse.hole_depth = *c.hole_depth;
  if (!c.phonons.empty()) cfg.phonon_enabled = c.phonons == "on";
  if (c.temperature) cfg.phonon.temperature_k = *c.temperature;
  if (c.dt) cfg.solver.dt_ps = *c.dt;
  if (c.samples) cfg.grid.n_samples = *c.samples;
  if (c.window_factor) cfg.grid.window_factor = *c.window_factor;
  cfg.validate();
  return cfg;
}

// Indices to write for a trajectory: every row when stride was explicit,
// otherwise thinned to about 2000 rows, endpoints always kept.
std::vector<std::size_t> output_rows(std::size_t n, bool thin) {
  std::vector<std::size_t> rows;
  const std::size_t step = thin ? std::max<std::size_t>(1, n / 2000) : 1;
  for (std::size_t i = 0; i < n; i += step) rows.push_back(i);
  if (n > 0 && rows.back() != n - 1) rows.push_back(n - 1);
  return rows;
}

int cmd_shape(const Common& c, const std::string& out_prefix) {
  const AppConfig cfg = build_config(c);
  const SimGrid grid = cfg.make_grid();
  const SampledField field = synthesize(cfg.pulse, cfg.emitter(false), grid);
  const InstantaneousProfile prof = instantaneous_profile(field);
  const Autocorrelation ac = autocorrelation(field);
  const EffectiveAreas areas = effective_areas(field);

  {
    std::ofstream out = open_out(out_prefix + "_time.csv");
    out << "t_ps,re_rabi,im_rabi,abs_rabi,delta_inst_psinv\n";
    for (std::size_t i = 0; i < grid.n_samples; ++i)
      out << fmt(prof.t_ps[i]) << "," << fmt(field.envelope[i].real()) << ","
          << fmt(field.envelope[i].imag()) << ","
          << fmt(prof.omega_abs_psinv[i]) << ","
          << fmt(prof.delta_inst_psinv[i]) << "\n";
  }
  {
    std::ofstream out = open_out(out_prefix + "_spectrum.csv");
    out << "omega_mev,re_spec,im_spec,abs_spec\n";
    for (std::size_t k = 0; k < grid.n_samples; ++k)
      out << fmt(kHbarMevPs * grid.nu_at(k)) << ","
          << fmt(field.spectrum[k].real()) << ","
          << fmt(field.spectrum[k].imag()) << ","
          << fmt(std::abs(field.spectrum[k])) << "\n";
  }
  {
    std::ofstream out = open_out(out_prefix + "_autocorrelation.csv");
    out << "delay_ps,g\n";
    for (std::size_t i = 0; i < ac.delay_ps.size(); ++i)
      out << fmt(ac.delay_ps[i]) << "," << fmt(ac.g[i]) << "\n";
  }

  std::cout << "grid: " << grid.n_samples << " samples, dt " << fmt(grid.dt_ps)
            << " ps\n"
            << "peak Rabi: " << fmt(field.peak_rabi()) << " rad/ps\n"
            << "envelope area: " << fmt(areas.magnitude_rad / std::numbers::pi)
            << " pi (magnitude), " << fmt(areas.coherent_rad / std::numbers::pi)
            << " pi (coherent)\n"
            << "wrote " << out_prefix << "_{time,spectrum,autocorrelation}.csv\n";
  return 0;
}

int cmd_evolve(const Common& c, const std::string& out_path,
               std::size_t stride, bool bloch_only) {
  const AppConfig cfg = build_config(c);
  const SimGrid grid = cfg.make_grid();
  const SampledField field = synthesize(cfg.pulse, cfg.emitter(false), grid);
  SolverParams sp;
  sp.dt_ps = cfg.solver.dt_ps;
  sp.stride = stride > 0 ? stride : 1;
  const Trajectory traj =
      propagate(field, cfg.emitter(cfg.phonon_enabled), sp);

  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;

  const auto rows = output_rows(traj.t_ps.size(), stride == 0);
  if (bloch_only) {
    out << "t_ps,sx,sy,sz\n";
    const auto track = bloch_export(traj);
    for (std::size_t i : rows)
      out << fmt(traj.t_ps[i]) << "," << fmt(track[i][0]) << ","
          << fmt(track[i][1]) << "," << fmt(track[i][2]) << "\n";
  } else {
    out << "t_ps,occupation,sx,sy,sz,e_plus_mev,e_minus_mev,adiab_ratio\n";
    for (std::size_t i : rows)
      out << fmt(traj.t_ps[i]) << "," << fmt(traj.occupation[i]) << ","
          << fmt(traj.bloch[i][0]) << "," << fmt(traj.bloch[i][1]) << ","
          << fmt(traj.bloch[i][2]) << "," << fmt(traj.e_plus_mev[i]) << ","
          << fmt(traj.e_minus_mev[i]) << "," << fmt(traj.adiabaticity[i])
          << "\n";
  }
  if (!out_path.empty())
    std::cerr << "final occupation: " << fmt(traj.final_occupation)
              << " (solver step " << fmt(traj.dt_ps) << " ps)\n";
  return 0;
}

int cmd_dressed(const Common& c, const std::string& out_path) {
  const AppConfig cfg = build_config(c);
  const SimGrid grid = cfg.make_grid();
  const SampledField field = synthesize(cfg.pulse, cfg.emitter(false), grid);
  const InstantaneousProfile prof = instantaneous_profile(field);
  const DressedCurve curve = dressed_energies(prof);
  const std::vector<double> ratio = adiabaticity_ratio(prof);

  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;

  out << "t_ps,omega_abs_psinv,delta_inst_psinv,e_plus_mev,e_minus_mev,"
         "adiab_ratio\n";
  for (std::size_t i = 0; i < prof.t_ps.size(); ++i)
    out << fmt(prof.t_ps[i]) << "," << fmt(prof.omega_abs_psinv[i]) << ","
        << fmt(prof.delta_inst_psinv[i]) << "," << fmt(curve.e_plus_mev[i])
        << "," << fmt(curve.e_minus_mev[i]) << "," << fmt(ratio[i]) << "\n";
  std::cerr << "minimum splitting: " << fmt(curve.min_gap_mev) << " meV at t = "
            << fmt(curve.gap_time_ps) << " ps\n";
  return 0;
}

int cmd_sweep(const Common& c, const std::vector<std::string>& axis_args,
              bool toggle, std::size_t budget, int jobs,
              const std::string& format, const std::string& out_path) {
  SweepConfig sc;
  sc.base = build_config(c);
  for (const std::string& a : axis_args) sc.axes.push_back(AxisSpec::parse(a));
  sc.phonon_toggle = toggle;
  sc.budget = budget;
  sc.jobs = jobs;

  const SweepResult result = run_sweep(sc);

  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (format == "json")
    emit_json(result, out);
  else
    emit_csv(result, out);

  std::size_t failed = 0;
  for (const auto& e : result.errors)
    if (!e.empty()) ++failed;
  if (failed > 0)
    std::cerr << failed << " of " << result.errors.size()
              << " sweep points failed; see the error entries\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chirped-pulse dynamics of a driven two-level emitter"};
  app.set_version_flag("--version", qdarp::kVersion);
  app.require_subcommand(1);

  Common c_shape, c_evolve, c_dressed, c_bloch, c_sweep;

  CLI::App* shape = app.add_subcommand(
      "shape", "Synthesize the shaped pulse and write time/spectrum tables");
  add_common(shape, c_shape);
  std::string shape_out;
  shape->add_option("--out", shape_out, "output file prefix")->required();

  CLI::App* evolve = app.add_subcommand(
      "evolve", "Integrate the master equation along the pulse");
  add_common(evolve, c_evolve);
  std::string evolve_out;
  std::size_t evolve_stride = 0;
  evolve->add_option("--out", evolve_out, "output CSV (default: stdout)");
  evolve->add_option("--stride", evolve_stride,
                     "record every Nth step (default: thin to ~2000 rows)");

  CLI::App* dressed = app.add_subcommand(
      "dressed", "Adiabatic energies and adiabaticity along the pulse");
  add_common(dressed, c_dressed);
  std::string dressed_out;
  dressed->add_option("--out", dressed_out, "output CSV (default: stdout)");

  CLI::App* bloch = app.add_subcommand(
      "bloch", "Bloch-vector track of the driven state");
  add_common(bloch, c_bloch);
  std::string bloch_out;
  std::size_t bloch_stride = 0;
  bloch->add_option("--out", bloch_out, "output CSV (default: stdout)");
  bloch->add_option("--stride", bloch_stride,
                    "record every Nth step (default: thin to ~2000 rows)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Final occupation over a parameter grid");
  add_common(sweep, c_sweep);
  std::vector<std::string> sweep_axes;
  bool sweep_toggle = false;
  std::size_t sweep_budget = 100000;
  int sweep_jobs = 0;
  std::string sweep_format = "csv";
  std::string sweep_out;
  sweep->add_option("--axis", sweep_axes,
                    "axis spec, e.g. area=0:6pi:61 or chirp=0,0.05,0.15")
      ->required()
      ->expected(1, 3);
  sweep->add_flag("--phonon-toggle", sweep_toggle,
                  "run every point with and without phonons");
  sweep->add_option("--budget", sweep_budget, "maximum number of grid points");
  sweep->add_option("--jobs", sweep_jobs, "worker threads (0 = auto)");
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sweep_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
    if (shape->parsed()) return cmd_shape(c_shape, shape_out);
    if (evolve->parsed())
      return cmd_evolve(c_evolve, evolve_out, evolve_stride, false);
    if (dressed->parsed()) return cmd_dressed(c_dressed, dressed_out);
    if (bloch->parsed())
      return cmd_evolve(c_bloch, bloch_out, bloch_stride, true);
    if (sweep->parsed())
      return cmd_sweep(c_sweep, sweep_axes, sweep_toggle, sweep_budget,
                       sweep_jobs, sweep_format, sweep_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qdarp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qdarp::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qdarp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
