#include "qdarp/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qdarp/errors.hpp"
#include "qdarp/units.hpp"

namespace qdarp {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

DressedCurve dressed_energies(const InstantaneousProfile& profile) {
  const std::size_t n = profile.t_ps.size();
  DressedCurve curve;
  curve.t_ps = profile.t_ps;
  curve.e_plus_mev.assign(n, kNan);
  curve.e_minus_mev.assign(n, kNan);
  curve.min_gap_mev = kNan;
  curve.gap_time_ps = kNan;
  for (std::size_t i = 0; i < n; ++i) {
    if (!profile.valid[i]) continue;
    const double lam =
        std::hypot(profile.omega_abs_psinv[i], profile.delta_inst_psinv[i]);
    const double gap = kHbarMevPs * lam;  // E+ - E-
    curve.e_plus_mev[i] = 0.5 * gap;
    curve.e_minus_mev[i] = -0.5 * gap;
    if (!(gap >= curve.min_gap_mev)) {  // also seeds the NaN start
      curve.min_gap_mev = gap;
      curve.gap_time_ps = profile.t_ps[i];
    }
  }
  return curve;
}

std::vector<double> adiabaticity_ratio(const InstantaneousProfile& profile) {
  const std::size_t n = profile.t_ps.size();
  std::vector<double> ratio(n, kNan);
  if (n < 2) return ratio;
  const double dt = profile.t_ps[1] - profile.t_ps[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (!profile.valid[i]) continue;
    const bool left = i > 0 && profile.valid[i - 1];
    const bool right = i + 1 < n && profile.valid[i + 1];
    std::size_t ia, ib;
    double span;
    if (left && right) {
      ia = i - 1;
      ib = i + 1;
      span = 2.0 * dt;
    } else if (right) {
      ia = i;
      ib = i + 1;
      span = dt;
    } else if (left) {
      ia = i - 1;
      ib = i;
      span = dt;
    } else {
      continue;
    }
    const double om = profile.omega_abs_psinv[i];
    const double de = profile.delta_inst_psinv[i];
    const double dom =
        (profile.omega_abs_psinv[ib] - profile.omega_abs_psinv[ia]) / span;
    const double dde =
        (profile.delta_inst_psinv[ib] - profile.delta_inst_psinv[ia]) / span;
    const double lam = std::hypot(om, de);
    if (!(lam > 0.0)) continue;
    ratio[i] = std::abs(de * dom - om * dde) / (lam * lam * lam);
  }
  return ratio;
}

std::optional<double> arp_threshold(const std::vector<double>& theta_pi,
                                    const std::vector<double>& occupation,
                                    double level) {
  if (theta_pi.empty() || theta_pi.size() != occupation.size())
    throw ConfigError("threshold: theta and occupation sizes must match");
  if (!(level > 0.0 && level < 1.0))
    throw ConfigError("threshold: level must lie in (0, 1)");
  for (std::size_t i = 1; i < theta_pi.size(); ++i)
    if (!(theta_pi[i] > theta_pi[i - 1]))
      throw ConfigError("threshold: theta values must be ascending");

  const std::size_t n = theta_pi.size();
  std::size_t idx = n;
  for (std::size_t i = n; i-- > 0;) {
    if (occupation[i] >= level)
      idx = i;
    else
      break;
  }
  if (idx == n) return std::nullopt;
  return theta_pi[idx];
}

std::vector<std::array<double, 3>> bloch_export(const Trajectory& traj) {
  for (std::size_t i = 0; i < traj.bloch.size(); ++i) {
    const auto& s = traj.bloch[i];
    const double norm = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    if (!(norm <= 1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "bloch: |s| = " << norm << " at t = " << traj.t_ps[i]
          << " ps leaves the unit ball";
      throw NumericError(msg.str());
    }
  }
  return traj.bloch;
}

}  // namespace qdarp
