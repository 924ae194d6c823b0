#include "qdarp/pulse_math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdarp {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

double temporal_chirp(double phi2_ps2, double tau0_ps) {
  if (tau0_ps <= 0.0) throw std::invalid_argument("tau0 must be > 0");
  const double tau4 = tau0_ps * tau0_ps * tau0_ps * tau0_ps;
  const double denom = tau4 / (4.0 * kLn2 * kLn2) + 4.0 * phi2_ps2 * phi2_ps2;
  return 2.0 * phi2_ps2 / denom;
}

double stretched_duration(double phi2_ps2, double tau0_ps) {
  if (tau0_ps <= 0.0) throw std::invalid_argument("tau0 must be > 0");
  const double x = 4.0 * kLn2 * phi2_ps2 / (tau0_ps * tau0_ps);
  return tau0_ps * std::sqrt(1.0 + x * x);
}

double field_amplitude_for_area(double theta_rad, double tau0_ps,
                                double dipole_scale) {
  if (tau0_ps <= 0.0) throw std::invalid_argument("tau0 must be > 0");
  if (theta_rad < 0.0) throw std::invalid_argument("area must be >= 0");
  if (dipole_scale <= 0.0) throw std::invalid_argument("dipole_scale must be > 0");
  // int exp(-2 ln2 t^2/tau0^2) dt = tau0 sqrt(pi/(2 ln2))
  return theta_rad / (dipole_scale * tau0_ps *
                      std::sqrt(std::numbers::pi / (2.0 * kLn2)));
}

}  // namespace qdarp
