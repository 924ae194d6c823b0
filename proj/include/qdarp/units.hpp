#pragma once

// Working unit system: energies in meV, times in ps, temperatures in K.
// Angular frequencies are rad/ps (written ps^-1 throughout).

namespace qdarp {

inline constexpr double kHbarMevPs = 0.6582119569;       // meV*ps
inline constexpr double kBoltzmannMevK = 0.08617333262;  // meV/K

inline constexpr double mev_to_angular(double mev) { return mev / kHbarMevPs; }
inline constexpr double angular_to_mev(double psinv) { return psinv * kHbarMevPs; }

}  // namespace qdarp
