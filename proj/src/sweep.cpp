#include "qdarp/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdarp/dynamics.hpp"
#include "qdarp/errors.hpp"
#include "qdarp/field.hpp"
#include "qdarp/parallel.hpp"
#include "qdarp/version.hpp"

namespace qdarp {

namespace {

using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepAxis axis_from_name(const std::string& name) {
  if (name == "area") return SweepAxis::area;
  if (name == "chirp") return SweepAxis::chirp;
  if (name == "hole") return SweepAxis::hole;
  if (name == "temperature") return SweepAxis::temperature;
  throw ConfigError("sweep: unknown axis '" + name +
                    "' (use area, chirp, hole or temperature)");
}

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_value(const std::string& raw) {
  std::string tok = strip(raw);
  if (tok.size() >= 2 && tok.compare(tok.size() - 2, 2, "pi") == 0)
    tok = strip(tok.substr(0, tok.size() - 2));  // cosmetic pi suffix
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (!tok.empty() && used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("sweep: cannot parse value '" + strip(raw) + "'");
}

// Effective per-point column values for the CSV: axis value where swept,
// base value otherwise.
struct PointColumns {
  double theta, chirp, hole, temp;
};

PointColumns columns_at(const SweepResult& r,
                        const std::vector<std::size_t>& index) {
  PointColumns c{r.base.pulse.area_pi, r.base.pulse.chirp_ps2,
                 r.base.pulse.hole_fwhm_mev, r.base.phonon.temperature_k};
  for (std::size_t a = 0; a < r.axes.size(); ++a) {
    const double v = r.axes[a].values[index[a]];
    switch (r.axes[a].axis) {
      case SweepAxis::area: c.theta = v; break;
      case SweepAxis::chirp: c.chirp = v; break;
      case SweepAxis::hole: c.hole = v; break;
      case SweepAxis::temperature: c.temp = v; break;
    }
  }
  return c;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::size_t total_points(const std::vector<std::size_t>& shape) {
  std::size_t total = 1;
  for (std::size_t s : shape) total *= s;
  return total;
}

}  // namespace

const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::area: return "area";
    case SweepAxis::chirp: return "chirp";
    case SweepAxis::hole: return "hole";
    case SweepAxis::temperature: return "temperature";
  }
  return "?";
}

AxisSpec AxisSpec::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("sweep: axis spec '" + text + "' needs the form name=values");
  AxisSpec spec;
  spec.axis = axis_from_name(strip(text.substr(0, eq)));
  const std::string body = strip(text.substr(eq + 1));
  if (body.empty()) throw ConfigError("sweep: axis '" + text + "' has no values");

  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      const auto colon = body.find(':', pos);
      parts.push_back(body.substr(pos, colon - pos));
      if (colon == std::string::npos) break;
      pos = colon + 1;
    }
    if (parts.size() != 3)
      throw ConfigError("sweep: range '" + body + "' needs start:stop:count");
    const double start = parse_value(parts[0]);
    const double stop = parse_value(parts[1]);
    long count = 0;
    try {
      std::size_t used = 0;
      count = std::stol(strip(parts[2]), &used);
      if (used != strip(parts[2]).size()) count = 0;
    } catch (const std::exception&) {
      count = 0;
    }
    if (count < 1)
      throw ConfigError("sweep: range count '" + strip(parts[2]) +
                        "' must be a positive integer");
    if (count == 1) {
      spec.values.push_back(start);
    } else {
      for (long i = 0; i < count; ++i)
        spec.values.push_back(start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(count - 1));
    }
    return spec;
  }

  std::size_t pos = 0;
  while (true) {
    const auto comma = body.find(',', pos);
    spec.values.push_back(parse_value(body.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

void SweepConfig::validate() const {
  base.validate();
  if (axes.empty() || axes.size() > 3)
    throw ConfigError("sweep: need between 1 and 3 axes");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].values.empty())
      throw ConfigError(std::string("sweep: axis '") + axis_name(axes[i].axis) +
                        "' has no values");
    for (std::size_t j = 0; j < i; ++j)
      if (axes[j].axis == axes[i].axis)
        throw ConfigError(std::string("sweep: axis '") +
                          axis_name(axes[i].axis) + "' appears twice");
    for (double v : axes[i].values) {
      const bool needs_nonneg = axes[i].axis != SweepAxis::chirp;
      if (needs_nonneg && !(v >= 0.0))
        throw ConfigError(std::string("sweep: axis '") +
                          axis_name(axes[i].axis) + "' needs values >= 0");
    }
  }
  if (jobs < 0) throw ConfigError("sweep: jobs must be >= 0");
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();
  if (total > budget) {
    std::ostringstream msg;
    msg << "sweep: " << total << " grid points exceed the budget of " << budget;
    throw ConfigError(msg.str());
  }
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();

  SweepResult result;
  result.axes = cfg.axes;
  for (const auto& a : cfg.axes) result.shape.push_back(a.values.size());
  result.config_hash = config_hash(cfg.base);
  result.code_version = kVersion;
  result.base = cfg.base;
  result.phonon_toggle = cfg.phonon_toggle;

  const std::size_t total = total_points(result.shape);
  const bool leg_off = cfg.phonon_toggle || !cfg.base.phonon_enabled;
  const bool leg_on = cfg.phonon_toggle || cfg.base.phonon_enabled;
  if (leg_off) result.occupation_off.assign(total, kNan);
  if (leg_on) result.occupation_on.assign(total, kNan);
  result.errors.assign(total, "");

  const int workers = cfg.jobs > 0 ? cfg.jobs : default_jobs();
  parallel_for(total, workers, [&](std::size_t idx) {
    AppConfig pt = cfg.base;
    std::size_t rem = idx;
    for (std::size_t a = cfg.axes.size(); a-- > 0;) {
      const double v = cfg.axes[a].values[rem % result.shape[a]];
      rem /= result.shape[a];
      switch (cfg.axes[a].axis) {
        case SweepAxis::area: pt.pulse.area_pi = v; break;
        case SweepAxis::chirp: pt.pulse.chirp_ps2 = v; break;
        case SweepAxis::hole: pt.pulse.hole_fwhm_mev = v; break;
        case SweepAxis::temperature: pt.phonon.temperature_k = v; break;
      }
    }
    try {
      pt.validate();
      const SimGrid grid = pt.make_grid();
      const SampledField field = synthesize(pt.pulse, pt.emitter(false), grid);
      SolverParams sp;
      sp.dt_ps = pt.solver.dt_ps;
      sp.stride = 0;
      if (leg_off)
        result.occupation_off[idx] =
            propagate(field, pt.emitter(false), sp).final_occupation;
      if (leg_on)
        result.occupation_on[idx] =
            propagate(field, pt.emitter(true), sp).final_occupation;
    } catch (const std::exception& e) {
      result.errors[idx] = e.what();
      if (leg_off) result.occupation_off[idx] = kNan;
      if (leg_on) result.occupation_on[idx] = kNan;
    }
  });
  return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << "theta_pi,chirp_ps2,hole_mev,temp_k,phonons,occupation\n";
  const std::size_t total = total_points(result.shape);
  std::vector<std::size_t> index(result.shape.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t a = result.shape.size(); a-- > 0;) {
      index[a] = rem % result.shape[a];
      rem /= result.shape[a];
    }
    const PointColumns c = columns_at(result, index);
    const std::string prefix = fmt(c.theta) + "," + fmt(c.chirp) + "," +
                               fmt(c.hole) + "," + fmt(c.temp) + ",";
    if (!result.occupation_off.empty())
      out << prefix << "0," << fmt(result.occupation_off[idx]) << "\n";
    if (!result.occupation_on.empty())
      out << prefix << "1," << fmt(result.occupation_on[idx]) << "\n";
  }
}

void emit_json(const SweepResult& result, std::ostream& out) {
  json j;
  j["code_version"] = result.code_version;
  j["config_hash"] = result.config_hash;
  j["phonon_toggle"] = result.phonon_toggle;
  j["base"] = json::parse(dump_config(result.base));
  j["shape"] = result.shape;
  json axes = json::array();
  for (const auto& a : result.axes) {
    json ja;
    ja["axis"] = axis_name(a.axis);
    ja["values"] = a.values;
    axes.push_back(ja);
  }
  j["axes"] = axes;
  if (!result.occupation_off.empty())
    j["occupation_off"] = result.occupation_off;
  if (!result.occupation_on.empty()) j["occupation_on"] = result.occupation_on;
  j["errors"] = result.errors;
  out << j.dump(2) << "\n";
}

SweepResult sweep_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("sweep: top level must be an object");

  SweepResult result;
  try {
    result.code_version = j.at("code_version").get<std::string>();
    result.config_hash = j.at("config_hash").get<std::string>();
    result.phonon_toggle = j.at("phonon_toggle").get<bool>();
    result.base = parse_config(j.at("base").dump());
    result.shape = j.at("shape").get<std::vector<std::size_t>>();
    for (const auto& ja : j.at("axes")) {
      AxisSpec spec;
      spec.axis = axis_from_name(ja.at("axis").get<std::string>());
      spec.values = ja.at("values").get<std::vector<double>>();
      result.axes.push_back(spec);
    }
    auto load_tensor = [&](const char* key, std::vector<double>& target) {
      if (!j.contains(key)) return;
      for (const auto& el : j.at(key))
        target.push_back(el.is_null() ? kNan : el.get<double>());
    };
    load_tensor("occupation_off", result.occupation_off);
    load_tensor("occupation_on", result.occupation_on);
    result.errors = j.at("errors").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }

  if (result.axes.size() != result.shape.size())
    throw ConfigError("sweep: axes and shape disagree");
  std::size_t total = 1;
  for (std::size_t a = 0; a < result.axes.size(); ++a) {
    if (result.axes[a].values.size() != result.shape[a])
      throw ConfigError("sweep: shape does not match axis values");
    total *= result.shape[a];
  }
  if (!result.occupation_off.empty() && result.occupation_off.size() != total)
    throw ConfigError("sweep: occupation_off length does not match the grid");
  if (!result.occupation_on.empty() && result.occupation_on.size() != total)
    throw ConfigError("sweep: occupation_on length does not match the grid");
  if (result.errors.size() != total)
    throw ConfigError("sweep: errors length does not match the grid");
  return result;
}

}  // namespace qdarp
