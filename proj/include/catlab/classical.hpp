#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "catlab/errors.hpp"

namespace catlab::classical {

/// Mean-field coupling Lambda_cl (ratio of interaction to tunnelling energy).
struct MeanFieldParams {
  double lambda_cl = 0.0;

  void validate() const {
    if (!(lambda_cl >= 0.0) || !std::isfinite(lambda_cl)) {
      throw ConfigError("mean-field coupling must be finite and >= 0");
    }
  }
};

/// (z, phi): population imbalance and relative phase. phi is left unwrapped.
struct PhasePoint {
  double z = 0.0;
  double phi = 0.0;
};

enum class Stability { Center, Saddle };

struct FixedPoint {
  PhasePoint point;
  Stability stability;
  std::complex<double> eigenvalue_plus;
  std::complex<double> eigenvalue_minus;
};

enum class Motion { FreeOscillation, SelfTrapping };

inline const char* to_string(Motion m) {
  return m == Motion::FreeOscillation ? "free_oscillation" : "self_trapping";
}

/// H_cl(z, phi) = (Lambda/2) z^2 - sqrt(1 - z^2) cos(phi).
inline double classical_energy(const PhasePoint& p, const MeanFieldParams& params) {
  if (!(std::abs(p.z) <= 1.0)) throw ConfigError("imbalance z must lie in [-1, 1]");
  return 0.5 * params.lambda_cl * p.z * p.z - std::sqrt(1.0 - p.z * p.z) * std::cos(p.phi);
}

/// Energy of the separatrix, H_cl(0, pi).
inline constexpr double kSeparatrixEnergy = 1.0;

/// Canonical flow: dz/dt = -dH/dphi, dphi/dt = dH/dz.
inline PhasePoint flow(const PhasePoint& p, const MeanFieldParams& params) {
  const double s = std::sqrt(std::max(0.0, 1.0 - p.z * p.z));
  return {-s * std::sin(p.phi), params.lambda_cl * p.z + p.z * std::cos(p.phi) / s};
}

/// Jacobian of the flow, row-major [[dz'/dz, dz'/dphi], [dphi'/dz, dphi'/dphi]].
inline std::array<double, 4> jacobian(const PhasePoint& p, const MeanFieldParams& params) {
  const double q = 1.0 - p.z * p.z;
  const double s = std::sqrt(q);
  const double sp = std::sin(p.phi);
  const double cp = std::cos(p.phi);
  return {p.z * sp / s, -s * cp, params.lambda_cl + cp / (q * s), -p.z * sp / s};
}

inline FixedPoint classify(const PhasePoint& p, const MeanFieldParams& params) {
  const auto a = jacobian(p, params);
  const double tr = a[0] + a[3];
  const double det = a[0] * a[3] - a[1] * a[2];
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
  const std::complex<double> lp = 0.5 * (tr + disc);
  const std::complex<double> lm = 0.5 * (tr - disc);
  // A real +/- pair marks a hyperbolic (saddle) point; anything else is elliptic or marginal.
  const bool saddle = std::abs(lp.imag()) < 1e-12 && lp.real() > 1e-12 && lm.real() < -1e-12;
  return {p, saddle ? Stability::Saddle : Stability::Center, lp, lm};
}

/// All stationary points of the flow, classified from the Jacobian.
///
/// z' = 0 forces sin(phi) = 0. With phi = 0 the only root of phi' is z = 0.
/// With phi = pi, phi' = z (Lambda - 1/sqrt(1-z^2)) adds z = +-sqrt(1 - 1/Lambda^2)
/// once Lambda > 1.
inline std::vector<FixedPoint> fixed_points(const MeanFieldParams& params) {
  params.validate();
  constexpr double pi = std::numbers::pi;
  std::vector<FixedPoint> out;
  out.push_back(classify({0.0, 0.0}, params));
  out.push_back(classify({0.0, pi}, params));
  if (params.lambda_cl > 1.0) {
    const double zs = std::sqrt(1.0 - 1.0 / (params.lambda_cl * params.lambda_cl));
    out.push_back(classify({zs, pi}, params));
    out.push_back(classify({-zs, pi}, params));
  }
  return out;
}

/// Upper branch z_c(phi) >= 0 of the separatrix H_cl(z, phi) = H_cl(0, pi).
///
/// Where the separatrix runs through the pole (possible for 1 < Lambda <= 2
/// near phi = 0) there is no root in [0, 1] and 1 is returned.
inline double separatrix(double phi, const MeanFieldParams& params) {
  params.validate();
  if (!(params.lambda_cl > 1.0)) {
    throw SeparatrixAbsent("separatrix requires mean-field coupling > 1 (got " +
                           std::to_string(params.lambda_cl) + ")");
  }
  const double c = std::cos(phi);
  auto g = [&](double z) {
    return 0.5 * params.lambda_cl * z * z - std::sqrt(std::max(0.0, 1.0 - z * z)) * c -
           kSeparatrixEnergy;
  };
  if (g(0.0) >= 0.0) return 0.0;

  // Bracket the smallest root by a forward scan, then bisect.
  constexpr int kScan = 4096;
  double lo = 0.0;
  double hi = -1.0;
  for (int i = 1; i <= kScan; ++i) {
    const double z = static_cast<double>(i) / kScan;
    if (g(z) >= 0.0) {
      hi = z;
      break;
    }
    lo = z;
  }
  if (hi < 0.0) return 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;
  Motion motion = Motion::FreeOscillation;
  bool phase_winds = false;   ///< |phi - phi0| exceeded 2 pi during the run
  double energy0 = 0.0;
  double max_energy_drift = 0.0;
};

inline constexpr double kEnergyDriftTol = 1e-6;

namespace detail {

inline PhasePoint rk4_step(const PhasePoint& p, double h, const MeanFieldParams& params) {
  auto add = [](const PhasePoint& a, const PhasePoint& k, double s) {
    return PhasePoint{a.z + s * k.z, a.phi + s * k.phi};
  };
  const PhasePoint k1 = flow(p, params);
  const PhasePoint k2 = flow(add(p, k1, 0.5 * h), params);
  const PhasePoint k3 = flow(add(p, k2, 0.5 * h), params);
  const PhasePoint k4 = flow(add(p, k3, h), params);
  return {p.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
          p.phi + h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi)};
}

inline bool step_ok(const PhasePoint& q, double e0, const MeanFieldParams& params, double tol) {
  if (!std::isfinite(q.z) || !std::isfinite(q.phi) || std::abs(q.z) >= 1.0) return false;
  return std::abs(classical_energy(q, params) - e0) <= tol;
}

/// One macro step of size h, subdivided (up to 2^10 pieces) where the plain
/// step leaves the cylinder or changes the energy by more than 1e-11.
inline PhasePoint refined_step(const PhasePoint& p, double h, const MeanFieldParams& params,
                               int depth) {
  constexpr int kMaxDepth = 10;
  constexpr double kStepTol = 1e-11;
  const double e = classical_energy(p, params);
  const PhasePoint q = rk4_step(p, h, params);
  if (step_ok(q, e, params, kStepTol * std::max(1.0, std::abs(e)))) return q;
  if (depth >= kMaxDepth) {
    throw NumericalError("trajectory step failed near z = " + std::to_string(p.z) +
                         " after 2^10 refinements");
  }
  const PhasePoint half = refined_step(p, 0.5 * h, params, depth + 1);
  return refined_step(half, 0.5 * h, params, depth + 1);
}

}  // namespace detail

/// Fixed-step RK4 integration of the mean-field flow.
///
/// Classification: SelfTrapping when z keeps one strict sign for the whole
/// run, FreeOscillation otherwise. Orbits around the self-trapped centres
/// (near |z| = 1, phi = pi) keep a bounded phase but still never change sign,
/// so the phase winding is reported separately.
inline Trajectory integrate_trajectory(const PhasePoint& p0, const MeanFieldParams& params,
                                       double t_final, double dt = 1e-3, int record_every = 1) {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= 0");
  if (!(std::abs(p0.z) < 1.0)) throw ConfigError("initial imbalance must satisfy |z| < 1");
  record_every = std::max(record_every, 1);

  Trajectory tr;
  tr.energy0 = classical_energy(p0, params);
  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  tr.times.reserve(static_cast<size_t>(steps / record_every + 2));
  tr.points.reserve(tr.times.capacity());
  tr.times.push_back(0.0);
  tr.points.push_back(p0);

  PhasePoint p = p0;
  double zmin = p0.z;
  double zmax = p0.z;
  for (long n = 1; n <= steps; ++n) {
    const double h = std::min(dt, t_final - (n - 1) * dt);
    p = detail::refined_step(p, h, params, 0);
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
    tr.max_energy_drift =
        std::max(tr.max_energy_drift, std::abs(classical_energy(p, params) - tr.energy0));
    if (std::abs(p.phi - p0.phi) > 2.0 * std::numbers::pi) tr.phase_winds = true;
    if (n % record_every == 0 || n == steps) {
      tr.times.push_back(std::min(n * dt, t_final));
      tr.points.push_back(p);
    }
  }
  if (tr.max_energy_drift > kEnergyDriftTol) {
    throw NumericalError("energy drift " + std::to_string(tr.max_energy_drift) +
                         " exceeds tolerance");
  }
  tr.motion = (zmin > 0.0 || zmax < 0.0) ? Motion::SelfTrapping : Motion::FreeOscillation;
  return tr;
}

struct SeparatrixSample {
  double phi;
  double z_c;
};

struct PhasePortrait {
  std::vector<FixedPoint> fixed_points;
  std::vector<SeparatrixSample> separatrix;
  std::vector<Trajectory> trajectories;
};

/// Fixed points, separatrix samples on a uniform phi grid over [-pi, pi], and
/// one trajectory per seed.
inline PhasePortrait phase_portrait(const MeanFieldParams& params,
                                    const std::vector<PhasePoint>& seeds, double t_final,
                                    double dt = 1e-3, int separatrix_samples = 257,
                                    int record_every = 10) {
  PhasePortrait out;
  out.fixed_points = fixed_points(params);
  if (params.lambda_cl > 1.0 && separatrix_samples >= 2) {
    for (int i = 0; i < separatrix_samples; ++i) {
      const double phi =
          -std::numbers::pi + 2.0 * std::numbers::pi * i / (separatrix_samples - 1);
      out.separatrix.push_back({phi, separatrix(phi, params)});
    }
  }
  for (const auto& s : seeds) {
    out.trajectories.push_back(integrate_trajectory(s, params, t_final, dt, record_every));
  }
  return out;
}

}  // namespace catlab::classical
