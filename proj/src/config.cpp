#include "qdarp/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qdarp/errors.hpp"

namespace qdarp {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("config: unknown key '" + item.key() + "' in " +
                        where);
  }
}

const json* child(const json& root, const char* key) {
  const auto it = root.find(key);
  if (it == root.end()) return nullptr;
  if (!it->is_object())
    throw ConfigError(std::string("config: '") + key + "' must be an object");
  return &*it;
}

void get_num(const json& obj, const char* where, const char* key,
             double& target) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number())
    throw ConfigError(std::string("config: ") + where + "." + key +
                      " must be a number");
  target = it->get<double>();
}

void get_size(const json& obj, const char* where, const char* key,
              std::size_t& target) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_unsigned())
    throw ConfigError(std::string("config: ") + where + "." + key +
                      " must be a non-negative integer");
  target = it->get<std::size_t>();
}

void get_bool(const json& obj, const char* where, const char* key,
              bool& target) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_boolean())
    throw ConfigError(std::string("config: ") + where + "." + key +
                      " must be true or false");
  target = it->get<bool>();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

EmitterConfig AppConfig::emitter(bool with_phonons) const {
  EmitterConfig e;
  e.transition_energy_mev = emitter_energy_mev;
  e.dipole_scale = dipole_scale;
  if (with_phonons) e.phonon = phonon;
  return e;
}

SimGrid AppConfig::make_grid() const {
  return SimGrid::for_pulse(pulse, grid.n_samples, grid.window_factor);
}

void AppConfig::validate() const {
  pulse.validate();
  emitter(true).validate();  // bath parameters must be sane even when off
  if (grid.n_samples < 16 || (grid.n_samples & (grid.n_samples - 1)) != 0)
    throw ConfigError("grid.n_samples: must be a power of two >= 16");
  if (!(grid.window_factor > 0.0))
    throw ConfigError("grid.window_factor: must be > 0");
  if (solver.dt_ps < 0.0) throw ConfigError("solver.dt_ps: must be >= 0");
}

AppConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object())
    throw ConfigError("config: top level must be an object");
  reject_unknown(root, "the top level",
                 {"emitter", "pulse", "mask", "phonon", "grid", "solver"});

  AppConfig cfg;
  if (const json* j = child(root, "emitter")) {
    reject_unknown(*j, "'emitter'", {"energy_mev", "dipole_scale"});
    get_num(*j, "emitter", "energy_mev", cfg.emitter_energy_mev);
    get_num(*j, "emitter", "dipole_scale", cfg.dipole_scale);
  }
  if (const json* j = child(root, "pulse")) {
    reject_unknown(*j, "'pulse'",
                   {"fwhm_ps", "area_pi", "chirp_ps2", "detuning_mev"});
    get_num(*j, "pulse", "fwhm_ps", cfg.pulse.fwhm_ps);
    get_num(*j, "pulse", "area_pi", cfg.pulse.area_pi);
    get_num(*j, "pulse", "chirp_ps2", cfg.pulse.chirp_ps2);
    get_num(*j, "pulse", "detuning_mev", cfg.pulse.detuning_mev);
  }
  if (const json* j = child(root, "mask")) {
    reject_unknown(*j, "'mask'", {"hole_fwhm_mev", "hole_depth"});
    get_num(*j, "mask", "hole_fwhm_mev", cfg.pulse.hole_fwhm_mev);
    get_num(*j, "mask", "hole_depth", cfg.pulse.hole_depth);
  }
  if (const json* j = child(root, "phonon")) {
    reject_unknown(*j, "'phonon'",
                   {"enabled", "coupling_ps2", "cutoff_psinv", "temperature_k"});
    get_bool(*j, "phonon", "enabled", cfg.phonon_enabled);
    get_num(*j, "phonon", "coupling_ps2", cfg.phonon.coupling_ps2);
    get_num(*j, "phonon", "cutoff_psinv", cfg.phonon.cutoff_psinv);
    get_num(*j, "phonon", "temperature_k", cfg.phonon.temperature_k);
  }
  if (const json* j = child(root, "grid")) {
    reject_unknown(*j, "'grid'", {"n_samples", "window_factor"});
    get_size(*j, "grid", "n_samples", cfg.grid.n_samples);
    get_num(*j, "grid", "window_factor", cfg.grid.window_factor);
  }
  if (const json* j = child(root, "solver")) {
    reject_unknown(*j, "'solver'", {"dt_ps"});
    get_num(*j, "solver", "dt_ps", cfg.solver.dt_ps);
  }
  cfg.validate();
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("config: cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const AppConfig& cfg) {
  std::ostringstream out;
  out << "{\n"
      << "  \"emitter\": {\"energy_mev\": " << fmt(cfg.emitter_energy_mev)
      << ", \"dipole_scale\": " << fmt(cfg.dipole_scale) << "},\n"
      << "  \"pulse\": {\"fwhm_ps\": " << fmt(cfg.pulse.fwhm_ps)
      << ", \"area_pi\": " << fmt(cfg.pulse.area_pi)
      << ", \"chirp_ps2\": " << fmt(cfg.pulse.chirp_ps2)
      << ", \"detuning_mev\": " << fmt(cfg.pulse.detuning_mev) << "},\n"
      << "  \"mask\": {\"hole_fwhm_mev\": " << fmt(cfg.pulse.hole_fwhm_mev)
      << ", \"hole_depth\": " << fmt(cfg.pulse.hole_depth) << "},\n"
      << "  \"phonon\": {\"enabled\": " << (cfg.phonon_enabled ? "true" : "false")
      << ", \"coupling_ps2\": " << fmt(cfg.phonon.coupling_ps2)
      << ", \"cutoff_psinv\": " << fmt(cfg.phonon.cutoff_psinv)
      << ", \"temperature_k\": " << fmt(cfg.phonon.temperature_k) << "},\n"
      << "  \"grid\": {\"n_samples\": " << cfg.grid.n_samples
      << ", \"window_factor\": " << fmt(cfg.grid.window_factor) << "},\n"
      << "  \"solver\": {\"dt_ps\": " << fmt(cfg.solver.dt_ps) << "}\n"
      << "}\n";
  return out.str();
}

std::string config_hash(const AppConfig& cfg) {
  const std::string text = dump_config(cfg);
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace qdarp
