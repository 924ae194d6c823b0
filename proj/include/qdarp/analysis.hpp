#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qdarp/dynamics.hpp"
#include "qdarp/field.hpp"

namespace qdarp {

// Adiabatic eigenenergies E+- = +-(hbar/2) sqrt(Omega^2 + Delta^2) in meV
// along a profile, with the minimum splitting and where it occurs.
// Invalid profile samples are skipped for the minimum and NaN in the curves.
struct DressedCurve {
  std::vector<double> t_ps;
  std::vector<double> e_plus_mev;
  std::vector<double> e_minus_mev;
  double min_gap_mev = 0.0;
  double gap_time_ps = 0.0;
};

DressedCurve dressed_energies(const InstantaneousProfile& profile);

// r(t) = |Delta dOmega/dt - Omega dDelta/dt| / Lambda^3, centered
// differences inside valid runs, one-sided at run edges, NaN elsewhere.
// r << 1 marks adiabatic evolution.
std::vector<double> adiabaticity_ratio(const InstantaneousProfile& profile);

// Smallest sampled theta such that occupation >= level from there on.
// Curve must be ascending in theta; returns nullopt when the tail never
// holds the level.
std::optional<double> arp_threshold(const std::vector<double>& theta_pi,
                                    const std::vector<double>& occupation,
                                    double level = 0.95);

// Bloch-sphere track of a trajectory; validates |s| <= 1 + 1e-9.
std::vector<std::array<double, 3>> bloch_export(const Trajectory& traj);

}  // namespace qdarp
