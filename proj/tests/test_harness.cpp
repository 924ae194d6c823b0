#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qdarp/config.hpp"
#include "qdarp/dynamics.hpp"
#include "qdarp/errors.hpp"
#include "qdarp/field.hpp"
#include "qdarp/sweep.hpp"
#include "qdarp/version.hpp"

using namespace qdarp;

namespace {

const char* kFullConfig = R"({
  "emitter": {"energy_mev": 1200.0, "dipole_scale": 0.8},
  "pulse": {"fwhm_ps": 0.2, "area_pi": 3.5, "chirp_ps2": 0.1,
            "detuning_mev": -0.4},
  "mask": {"hole_fwhm_mev": 1.05, "hole_depth": 0.9},
  "phonon": {"enabled": true, "coupling_ps2": 0.03, "cutoff_psinv": 2.0,
             "temperature_k": 10.0},
  "grid": {"n_samples": 8192, "window_factor": 20.0},
  "solver": {"dt_ps": 0.001}
})";

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.axes.push_back(AxisSpec::parse("area=1,2"));
  cfg.axes.push_back(AxisSpec::parse("chirp=0,0.05"));
  return cfg;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  emit_csv(r, out);
  return out.str();
}

std::string json_of(const SweepResult& r) {
  std::ostringstream out;
  emit_json(r, out);
  return out.str();
}

}  // namespace

TEST_CASE("an empty document parses to the documented defaults") {
  const AppConfig cfg = parse_config("{}");
  CHECK(cfg.pulse.fwhm_ps == 0.110);
  CHECK(cfg.pulse.area_pi == 1.0);
  CHECK(cfg.pulse.chirp_ps2 == 0.0);
  CHECK(cfg.pulse.hole_fwhm_mev == 0.0);
  CHECK(cfg.emitter_energy_mev == 1059.7);
  CHECK_FALSE(cfg.phonon_enabled);
  CHECK(cfg.phonon.coupling_ps2 == 0.0272);
  CHECK(cfg.grid.n_samples == 16384);
  CHECK(cfg.grid.window_factor == 16.0);
  CHECK(cfg.solver.dt_ps == 0.0);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("every documented key is applied") {
  const AppConfig cfg = parse_config(kFullConfig);
  CHECK(cfg.emitter_energy_mev == 1200.0);
  CHECK(cfg.dipole_scale == 0.8);
  CHECK(cfg.pulse.fwhm_ps == 0.2);
  CHECK(cfg.pulse.area_pi == 3.5);
  CHECK(cfg.pulse.chirp_ps2 == 0.1);
  CHECK(cfg.pulse.detuning_mev == -0.4);
  CHECK(cfg.pulse.hole_fwhm_mev == 1.05);
  CHECK(cfg.pulse.hole_depth == 0.9);
  CHECK(cfg.phonon_enabled);
  CHECK(cfg.phonon.coupling_ps2 == 0.03);
  CHECK(cfg.phonon.cutoff_psinv == 2.0);
  CHECK(cfg.phonon.temperature_k == 10.0);
  CHECK(cfg.grid.n_samples == 8192);
  CHECK(cfg.grid.window_factor == 20.0);
  CHECK(cfg.solver.dt_ps == 0.001);

  const EmitterConfig with = cfg.emitter(true);
  REQUIRE(with.phonon.has_value());
  CHECK(with.phonon->temperature_k == 10.0);
  CHECK(with.transition_energy_mev == 1200.0);
  CHECK_FALSE(cfg.emitter(false).phonon.has_value());

  const SimGrid g = cfg.make_grid();
  CHECK(g.n_samples == 8192);
  CHECK(g.window_ps() > 0.0);
}

TEST_CASE("unknown keys and wrong types are rejected, not ignored") {
  CHECK_THROWS_AS(parse_config(R"({"pulses": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"pulse": {"fwhm": 0.1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mask": {"depth": 1.0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"pulse": {"fwhm_ps": "fast"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n_samples": 0.5}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n_samples": -16}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"phonon": {"enabled": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
}

TEST_CASE("validation looks at the whole document") {
  AppConfig cfg = parse_config("{}");
  cfg.grid.n_samples = 1000;  // not a power of two
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = parse_config("{}");
  cfg.grid.window_factor = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = parse_config("{}");
  cfg.solver.dt_ps = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = parse_config("{}");
  cfg.pulse.hole_depth = 2.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  // The bath block must be sane even while disabled.
  cfg = parse_config("{}");
  cfg.phonon.coupling_ps2 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("dump and parse are a fixpoint and feed a stable hash") {
  const AppConfig cfg = parse_config(kFullConfig);
  const std::string once = dump_config(cfg);
  const AppConfig back = parse_config(once);
  CHECK(dump_config(back) == once);
  CHECK(config_hash(back) == config_hash(cfg));

  const std::string h = config_hash(cfg);
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);

  AppConfig tweaked = cfg;
  tweaked.pulse.area_pi = 3.6;
  CHECK(config_hash(tweaked) != h);
  tweaked = cfg;
  tweaked.phonon_enabled = false;
  CHECK(config_hash(tweaked) != h);
}

TEST_CASE("configs load from disk and missing files are an io error") {
  const std::string path = "/tmp/qdarp_test_config.json";
  {
    std::ofstream out(path);
    out << kFullConfig;
  }
  const AppConfig cfg = load_config(path);
  CHECK(cfg.pulse.area_pi == 3.5);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config(path), IoError);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/cfg.json"), IoError);
}

TEST_CASE("axis expressions cover linspace, lists, and the pi suffix") {
  const AxisSpec lin = AxisSpec::parse("area=0:6pi:61");
  CHECK(lin.axis == SweepAxis::area);
  REQUIRE(lin.values.size() == 61);
  CHECK(lin.values.front() == 0.0);
  CHECK(lin.values.back() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(lin.values[1] == doctest::Approx(0.1).epsilon(1e-12));

  const AxisSpec coarse = AxisSpec::parse("area=0:6:4");
  CHECK(coarse.values == std::vector<double>{0.0, 2.0, 4.0, 6.0});

  const AxisSpec single = AxisSpec::parse("temperature=4.2:20:1");
  CHECK(single.axis == SweepAxis::temperature);
  CHECK(single.values == std::vector<double>{4.2});

  const AxisSpec list = AxisSpec::parse(" chirp = -0.15, 0 , 0.15 ");
  CHECK(list.axis == SweepAxis::chirp);
  CHECK(list.values == std::vector<double>{-0.15, 0.0, 0.15});

  const AxisSpec spaced = AxisSpec::parse("area=1 pi, 2pi,3");
  CHECK(spaced.values == std::vector<double>{1.0, 2.0, 3.0});

  CHECK_THROWS_AS(AxisSpec::parse("area="), ConfigError);
  CHECK_THROWS_AS(AxisSpec::parse("bogus=1"), ConfigError);
  CHECK_THROWS_AS(AxisSpec::parse("area"), ConfigError);
  CHECK_THROWS_AS(AxisSpec::parse("area=1:2"), ConfigError);
  CHECK_THROWS_AS(AxisSpec::parse("area=1:2:0"), ConfigError);
  CHECK_THROWS_AS(AxisSpec::parse("area=one,two"), ConfigError);
  CHECK_THROWS_AS(AxisSpec::parse("hole=1;2"), ConfigError);
}

TEST_CASE("sweep validation guards axes and the point budget") {
  SweepConfig cfg = small_sweep();
  CHECK_NOTHROW(cfg.validate());

  cfg.axes.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = small_sweep();
  cfg.axes.push_back(AxisSpec::parse("area=3,4"));
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // area appears twice

  cfg = small_sweep();
  cfg.axes.push_back(AxisSpec::parse("hole=0,1"));
  cfg.axes.push_back(AxisSpec::parse("temperature=4,40"));
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // four axes

  cfg = small_sweep();
  cfg.axes[0].values.assign(1, -2.0);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // negative area

  cfg = small_sweep();
  cfg.budget = 3;
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("exceed the budget") !=
          std::string::npos);
  }
}

TEST_CASE("a one-point sweep reproduces a direct propagation exactly") {
  SweepConfig cfg;
  cfg.axes.push_back(AxisSpec::parse("area=2"));
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.shape == std::vector<std::size_t>{1});
  REQUIRE(r.occupation_off.size() == 1);
  CHECK(r.occupation_on.empty());
  CHECK(r.errors[0].empty());

  AppConfig direct = cfg.base;
  direct.pulse.area_pi = 2.0;
  SolverParams sp;
  sp.stride = 0;
  const Trajectory traj =
      propagate(synthesize(direct.pulse, direct.emitter(false),
                           direct.make_grid()),
                direct.emitter(false), sp);
  CHECK(r.occupation_off[0] == traj.final_occupation);
  CHECK(r.config_hash == config_hash(cfg.base));
  CHECK(r.code_version == kVersion);
}

TEST_CASE("toggled sweeps emit one row per point and setting") {
  SweepConfig cfg = small_sweep();
  cfg.phonon_toggle = true;
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.shape == std::vector<std::size_t>{2, 2});
  CHECK(r.occupation_off.size() == 4);
  CHECK(r.occupation_on.size() == 4);

  const std::string csv = csv_of(r);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "theta_pi,chirp_ps2,hole_mev,temp_k,phonons,occupation");
  std::size_t rows = 0, on_rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // theta,chirp,hole,temp,phonons,occupation
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> row;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    REQUIRE(row.size() == 6);
    CHECK(row[2] == "0");    // base hole width
    CHECK(row[3] == "4.2");  // base bath temperature
    if (row[4] == "1") ++on_rows;
  }
  CHECK(rows == 8);
  CHECK(on_rows == 4);
}

TEST_CASE("sweep results survive a json round trip byte for byte") {
  SweepConfig cfg = small_sweep();
  cfg.phonon_toggle = true;
  const SweepResult r = run_sweep(cfg);
  const std::string text = json_of(r);
  const SweepResult back = sweep_from_json(text);
  CHECK(json_of(back) == text);
  CHECK(csv_of(back) == csv_of(r));
  CHECK(back.config_hash == r.config_hash);

  CHECK_THROWS_AS(sweep_from_json("{}"), ConfigError);
  CHECK_THROWS_AS(sweep_from_json("nope"), ConfigError);
}

TEST_CASE("a grid sweep factors into independent line sweeps") {
  SweepConfig grid = small_sweep();
  const SweepResult rg = run_sweep(grid);
  REQUIRE(rg.occupation_off.size() == 4);

  for (std::size_t i = 0; i < 2; ++i) {
    SweepConfig line;
    line.base.pulse.area_pi = grid.axes[0].values[i];
    line.axes.push_back(grid.axes[1]);
    const SweepResult rl = run_sweep(line);
    REQUIRE(rl.occupation_off.size() == 2);
    CHECK(rl.occupation_off[0] == rg.occupation_off[2 * i]);
    CHECK(rl.occupation_off[1] == rg.occupation_off[2 * i + 1]);
  }
}

TEST_CASE("results do not depend on the worker count") {
  SweepConfig cfg;
  cfg.axes.push_back(AxisSpec::parse("area=0:3:7"));
  cfg.jobs = 1;
  const std::string serial = csv_of(run_sweep(cfg));
  cfg.jobs = 4;
  const std::string parallel = csv_of(run_sweep(cfg));
  CHECK(serial == parallel);
}

TEST_CASE("a failing point is recorded without sinking the sweep") {
  SweepConfig cfg;
  cfg.base.solver.dt_ps = 0.004;  // fine at 1 pi, too coarse at 40 pi
  cfg.axes.push_back(AxisSpec::parse("area=1,40"));
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.errors.size() == 2);
  CHECK(r.errors[0].empty());
  CHECK(r.errors[1].find("need dt_ps <=") != std::string::npos);
  CHECK(std::isfinite(r.occupation_off[0]));
  CHECK(r.occupation_off[0] > 0.9);
  CHECK(std::isnan(r.occupation_off[1]));

  // The NaN entry travels through json as null and back as NaN.
  const SweepResult back = sweep_from_json(json_of(r));
  CHECK(std::isnan(back.occupation_off[1]));
  CHECK(back.errors[1] == r.errors[1]);
}
