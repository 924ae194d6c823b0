#include "qdarp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "qdarp/analysis.hpp"
#include "qdarp/errors.hpp"
#include "qdarp/fft.hpp"
#include "qdarp/kernels.hpp"
#include "qdarp/parallel.hpp"
#include "qdarp/units.hpp"

namespace qdarp {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Relative envelope level below which the drive cannot move the state at
// double precision; integration is confined to this support.
constexpr double kSupportFloor = 1e-9;
constexpr std::size_t kMaxRefined = std::size_t{1} << 22;

using C4 = std::array<std::complex<double>, 4>;

// Per-sample drive data on the solver grid. hw is Omega(t)/2; a, b, c are
// the entries of the upper dressed projector P+ = [[a, b*], [b, c]] in the
// omega0 frame, so b carries the envelope phase.
struct Coef {
  std::complex<double> hw;
  std::complex<double> b;
  double gd = 0.0;
  double gu = 0.0;
  double a = 0.0;
  double c = 0.0;
};

// d rho/dt for rho = [r00, r01, r10, r11] (row-major). Unitary part is the
// commutator with (1/2)(W sigma+ + W* sigma-); the dissipator uses that
// |-><+| rho |+><-| = Tr(P+ rho) P- and L'L = P+, so everything reduces to
// traces against P+ and anticommutators with P+/P-.
C4 rhs(const C4& r, const Coef& k, bool dissipative) {
  const std::complex<double> w = k.hw;
  const std::complex<double> u = std::conj(w);
  const std::complex<double> c00 = u * r[2] - w * r[1];
  const std::complex<double> c01 = u * (r[3] - r[0]);
  const std::complex<double> c10 = w * (r[0] - r[3]);
  C4 out{-kI * c00, -kI * c01, -kI * c10, kI * c00};
  if (!dissipative || (k.gd == 0.0 && k.gu == 0.0)) return out;

  const std::complex<double> bc = std::conj(k.b);
  const std::complex<double> tr = r[0] + r[3];
  const std::complex<double> cross = bc * r[2] + k.b * r[1];
  const std::complex<double> tp = k.a * r[0] + cross + k.c * r[3];
  const std::complex<double> tm = tr - tp;
  out[0] += k.gd * (tp * k.c - 0.5 * (2.0 * k.a * r[0] + cross)) +
            k.gu * (tm * k.a - 0.5 * (2.0 * k.c * r[0] - cross));
  out[1] += k.gd * (-tp * bc - 0.5 * (r[1] + bc * tr)) +
            k.gu * (tm * bc - 0.5 * (r[1] - bc * tr));
  out[2] += k.gd * (-tp * k.b - 0.5 * (r[2] + k.b * tr)) +
            k.gu * (tm * k.b - 0.5 * (r[2] - k.b * tr));
  out[3] += k.gd * (tp * k.a - 0.5 * (2.0 * k.c * r[3] + cross)) +
            k.gu * (tm * k.c - 0.5 * (2.0 * k.a * r[3] - cross));
  return out;
}

C4 axpy(const C4& r, double h, const C4& k) {
  return {r[0] + h * k[0], r[1] + h * k[1], r[2] + h * k[2], r[3] + h * k[3]};
}

// Transform-limit duration implied by the spectrum actually present:
// outermost half-maximum crossings of |S|^2 (linearly interpolated), mapped
// through the Gaussian time-bandwidth product.
double measured_tl_duration(const SampledField& field) {
  const std::size_t n = field.grid.n_samples;
  std::vector<double> p(n);
  kernels::active_ops().abs2(field.spectrum.data(), p.data(), n);
  double peak = 0.0;
  for (double v : p) peak = std::max(peak, v);
  if (peak <= 0.0) throw NumericError("field spectrum is empty");
  const double half = 0.5 * peak;

  std::size_t lo = 0;
  while (lo < n && p[lo] < half) ++lo;
  std::size_t hi = n - 1;
  while (hi > lo && p[hi] < half) --hi;

  const double dnu = field.grid.dnu_psinv();
  double nu_lo = field.grid.nu_at(lo);
  if (lo > 0 && p[lo] > p[lo - 1])
    nu_lo -= dnu * (p[lo] - half) / (p[lo] - p[lo - 1]);
  double nu_hi = field.grid.nu_at(hi);
  if (hi + 1 < n && p[hi] > p[hi + 1])
    nu_hi += dnu * (p[hi] - half) / (p[hi] - p[hi + 1]);
  const double width = nu_hi - nu_lo;
  if (width <= 0.0) throw NumericError("field spectrum is degenerate");
  return 4.0 * kLn2 / width;
}

}  // namespace

PhononRates phonon_rates(double omega_abs_psinv, double delta_inst_psinv,
                         const PhononSpec& bath) {
  bath.validate();
  PhononRates out;
  const double lambda = std::hypot(omega_abs_psinv, delta_inst_psinv);
  if (!(lambda > 0.0)) return out;
  const double xc = lambda / bath.cutoff_psinv;
  const double spectral =
      bath.coupling_ps2 * lambda * lambda * lambda * std::exp(-xc * xc);
  const double sin2t = omega_abs_psinv / lambda;
  const double base = 0.5 * kPi * spectral * sin2t * sin2t;
  double nbar = 0.0;
  if (bath.temperature_k > 0.0) {
    const double x =
        kHbarMevPs * lambda / (kBoltzmannMevK * bath.temperature_k);
    nbar = 1.0 / std::expm1(x);
  }
  out.down_psinv = base * (nbar + 1.0);
  out.up_psinv = base * nbar;
  return out;
}

Trajectory propagate(const SampledField& field, const EmitterConfig& emitter,
                     const SolverParams& params) {
  field.grid.validate();
  emitter.validate();
  if (params.dt_ps < 0.0) throw ConfigError("solver.dt_ps: must be >= 0");
  const std::size_t n = field.grid.n_samples;
  if (field.envelope.size() != n || field.spectrum.size() != n)
    throw ConfigError("field: sample arrays do not match the grid");

  Trajectory traj;
  const double peak = field.peak_rabi();
  if (peak <= 0.0) {
    // Nothing drives the state in this frame; report the resting endpoints.
    traj.t_ps = {field.grid.time_at(0), field.grid.time_at(n - 1)};
    traj.rho.assign(2, C4{1.0, 0.0, 0.0, 0.0});
    traj.bloch.assign(2, {0.0, 0.0, -1.0});
    traj.occupation.assign(2, 0.0);
    traj.e_plus_mev.assign(2, kNan);
    traj.e_minus_mev.assign(2, kNan);
    traj.adiabaticity.assign(2, kNan);
    return traj;
  }

  // Fastest local precession, from the coarse-grid profile.
  double lambda_max = 0.0;
  {
    const InstantaneousProfile coarse = instantaneous_profile(field);
    for (std::size_t i = 0; i < n; ++i) {
      const double om = coarse.omega_abs_psinv[i];
      const double lam =
          coarse.valid[i] ? std::hypot(om, coarse.delta_inst_psinv[i]) : om;
      lambda_max = std::max(lambda_max, lam);
    }
  }

  const double dt_limit = 2.0 * kPi / (20.0 * lambda_max);
  double dt_target;
  if (params.dt_ps > 0.0) {
    if (params.dt_ps > dt_limit) {
      std::ostringstream msg;
      msg << "solver.dt_ps: " << params.dt_ps
          << " ps cannot resolve the dressed precession (peak splitting "
          << lambda_max << " rad/ps); need dt_ps <= " << dt_limit << " ps";
      throw NumericError(msg.str());
    }
    dt_target = params.dt_ps;
  } else {
    dt_target = std::min(measured_tl_duration(field) / 200.0,
                         2.0 * kPi / (50.0 * lambda_max));
  }

  // Refine the grid until two sub-steps fit into dt_target, so the RK4
  // midpoint lands on a stored sample.
  const double window = field.grid.window_ps();
  std::size_t nref = n;
  while (static_cast<double>(nref) * dt_target < 2.0 * window) {
    if (nref >= kMaxRefined) {
      std::ostringstream msg;
      msg << "solver step " << dt_target << " ps needs more than " << kMaxRefined
          << " samples across the " << window << " ps window";
      throw NumericError(msg.str());
    }
    nref *= 2;
  }
  const double dtr = window / static_cast<double>(nref);
  const double h = 2.0 * dtr;

  // Resample by zero-padding the centred spectrum: exact for band-limited
  // data, and the original samples are reproduced bit-for-bit up to FFT
  // rounding.
  std::vector<std::complex<double>> env;
  if (nref == n) {
    env = field.envelope;
  } else {
    std::vector<std::complex<double>> spec(nref, std::complex<double>{});
    std::copy(field.spectrum.begin(), field.spectrum.end(),
              spec.begin() + static_cast<std::ptrdiff_t>((nref - n) / 2));
    env.resize(nref);
    Fft fft(nref);
    fft.time_from_spectrum(spec.data(), env.data(), dtr);
  }

  // Trim to the numerical support, symmetric about t = 0 so that mirrored
  // drives integrate over mirrored sample sets.
  const std::size_t mid = nref / 2;
  std::size_t lo = 0;
  std::size_t hi = nref - 1;
  {
    std::vector<double> mag(nref);
    kernels::active_ops().abs_mag(env.data(), mag.data(), nref);
    const double thr = kSupportFloor * peak;
    while (lo < nref && mag[lo] < thr) ++lo;
    while (hi > lo && mag[hi] < thr) --hi;
  }
  std::size_t half_span = std::max(mid - std::min(lo, mid),
                                   std::max(hi, mid) - mid);
  half_span = std::min(std::max<std::size_t>(half_span, 1), mid - 1);
  lo = mid - half_span;
  hi = mid + half_span;
  const std::size_t count = hi - lo + 1;
  const std::size_t steps = half_span;
  const double t0 = (static_cast<double>(lo) - static_cast<double>(mid)) * dtr;

  const InstantaneousProfile prof =
      instantaneous_profile_range(env.data() + lo, count, t0, dtr, peak);
  const std::vector<double> adiab = adiabaticity_ratio(prof);

  const bool dissipative = emitter.phonon.has_value();
  std::vector<Coef> coef(count);
  for (std::size_t j = 0; j < count; ++j) {
    Coef& k = coef[j];
    k.hw = 0.5 * env[lo + j];
    if (!dissipative || !prof.valid[j]) continue;
    const double om = prof.omega_abs_psinv[j];
    const double de = prof.delta_inst_psinv[j];
    const double lam = std::hypot(om, de);
    if (!(lam > 0.0)) continue;
    const PhononRates rates = phonon_rates(om, de, *emitter.phonon);
    k.gd = rates.down_psinv;
    k.gu = rates.up_psinv;
    k.a = 0.5 * (1.0 - de / lam);
    k.c = 0.5 * (1.0 + de / lam);
    k.b = env[lo + j] / (2.0 * lam);
  }
  std::vector<std::complex<double>>().swap(env);

  const std::size_t stride = params.stride;
  auto recorded = [&](std::size_t m) {
    return m == 0 || m == steps || (stride != 0 && m % stride == 0);
  };
  std::size_t n_rec = stride != 0 ? steps / stride + 2 : 2;
  traj.t_ps.reserve(n_rec);
  traj.rho.reserve(n_rec);
  traj.bloch.reserve(n_rec);
  traj.occupation.reserve(n_rec);
  traj.e_plus_mev.reserve(n_rec);
  traj.e_minus_mev.reserve(n_rec);
  traj.adiabaticity.reserve(n_rec);

  auto push = [&](std::size_t m, const C4& r) {
    const std::size_t j = 2 * m;
    traj.t_ps.push_back(t0 + static_cast<double>(j) * dtr);
    traj.rho.push_back(r);
    traj.bloch.push_back(
        {2.0 * r[2].real(), 2.0 * r[2].imag(), (r[3] - r[0]).real()});
    traj.occupation.push_back(r[3].real());
    if (prof.valid[j]) {
      const double lam =
          std::hypot(prof.omega_abs_psinv[j], prof.delta_inst_psinv[j]);
      const double e = 0.5 * kHbarMevPs * lam;
      traj.e_plus_mev.push_back(e);
      traj.e_minus_mev.push_back(-e);
    } else {
      traj.e_plus_mev.push_back(kNan);
      traj.e_minus_mev.push_back(kNan);
    }
    traj.adiabaticity.push_back(adiab[j]);
  };

  C4 r{1.0, 0.0, 0.0, 0.0};
  push(0, r);
  for (std::size_t m = 0; m < steps; ++m) {
    const Coef& k0 = coef[2 * m];
    const Coef& k1 = coef[2 * m + 1];
    const Coef& k2 = coef[2 * m + 2];
    const C4 a1 = rhs(r, k0, dissipative);
    const C4 a2 = rhs(axpy(r, 0.5 * h, a1), k1, dissipative);
    const C4 a3 = rhs(axpy(r, 0.5 * h, a2), k1, dissipative);
    const C4 a4 = rhs(axpy(r, h, a3), k2, dissipative);
    for (std::size_t q = 0; q < 4; ++q)
      r[q] += (h / 6.0) * (a1[q] + 2.0 * a2[q] + 2.0 * a3[q] + a4[q]);
    if (recorded(m + 1)) push(m + 1, r);
  }

  traj.final_occupation = r[3].real();
  traj.dt_ps = h;
  return traj;
}

AreaCurve occupation_vs_area(const PulseSpec& base,
                             const EmitterConfig& emitter, const SimGrid& grid,
                             const std::vector<double>& areas_pi,
                             PhononSetting setting, int jobs) {
  if (areas_pi.empty()) throw ConfigError("areas: need at least one value");
  for (std::size_t i = 0; i < areas_pi.size(); ++i) {
    if (!(areas_pi[i] >= 0.0)) throw ConfigError("areas: values must be >= 0");
    if (i > 0 && areas_pi[i] < areas_pi[i - 1])
      throw ConfigError("areas: values must be non-decreasing");
  }
  const bool want_on = setting != PhononSetting::off;
  const bool want_off = setting != PhononSetting::on;
  if (want_on && !emitter.phonon.has_value())
    throw ConfigError("phonon: occupation curve with phonons needs a bath");
  base.validate();
  emitter.validate();
  grid.validate_for(base);

  EmitterConfig bare = emitter;
  bare.phonon.reset();

  AreaCurve out;
  out.theta_pi = areas_pi;
  if (want_off) out.occupation.assign(areas_pi.size(), 0.0);
  if (want_on) out.occupation_on.assign(areas_pi.size(), 0.0);

  SolverParams sp;
  sp.stride = 0;  // endpoints are all we keep
  const int workers = jobs > 0 ? jobs : default_jobs();
  parallel_for(areas_pi.size(), workers, [&](std::size_t i) {
    PulseSpec pulse = base;
    pulse.area_pi = areas_pi[i];
    const SampledField field = synthesize(pulse, bare, grid);
    if (want_off)
      out.occupation[i] = propagate(field, bare, sp).final_occupation;
    if (want_on)
      out.occupation_on[i] = propagate(field, emitter, sp).final_occupation;
  });
  return out;
}

}  // namespace qdarp
