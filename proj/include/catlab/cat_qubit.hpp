#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "catlab/density.hpp"
#include "catlab/metrology.hpp"

namespace catlab::cat_qubit {

/// Closed-form description of a symmetric cat whose dead branch is entangled
/// with a qubit through the angle eta.
struct CatQubitModel {
  double lambda = 0.0;      ///< extensive difference
  double peak_width = 1.0;  ///< PW = 2 * standard deviation of one branch
  double eta = 0.0;         ///< entanglement angle in [0, pi/2]

  double alpha() const { return lambda / peak_width; }

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("extensive difference must be >= 0");
    if (!(peak_width > 0.0) || !std::isfinite(peak_width)) throw ConfigError("peak width must be > 0");
    if (!(eta >= 0.0 && eta <= std::numbers::pi / 2)) throw ConfigError("eta must lie in [0, pi/2]");
  }
  /// The regime of interest has alpha > 1; reported, not enforced.
  bool in_regime() const { return alpha() > 1.0; }
};

/// F_q(J_z) = Lambda^2 cos^2(eta) + PW^2.
inline double analytic_qfi(const CatQubitModel& m) {
  m.validate();
  const double c = std::cos(m.eta);
  return m.lambda * m.lambda * c * c + m.peak_width * m.peak_width;
}

/// r_q = sqrt((Lambda^2 cos^2 eta + PW^2) / (PW^2 + Lambda^2)).
inline double analytic_rq(const CatQubitModel& m) {
  return std::sqrt(analytic_qfi(m) / (m.peak_width * m.peak_width + m.lambda * m.lambda));
}

/// Lambda r_q = Lambda sqrt((1 + alpha^2 cos^2 eta) / (1 + alpha^2)).
inline double reduced_extdiff(const CatQubitModel& m) {
  m.validate();
  const double a = m.alpha();
  const double c = std::cos(m.eta);
  return m.lambda * std::sqrt((1.0 + a * a * c * c) / (1.0 + a * a));
}

/// eta_c = arccos(alpha^-2): Lambda r_q > PW holds exactly for eta < eta_c.
inline double eta_critical(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw ConfigError("critical angle needs alpha >= 1 (got " + std::to_string(alpha) + ")");
  }
  return std::acos(1.0 / (alpha * alpha));
}

/// 1 + K12 + K23 + K13 for the entangled cat: 1 - (3/2) cos(eta). Negative
/// values witness a Leggett-Garg violation; the symmetric cat (eta = 0) gives -1/2.
inline double lg_violation(double eta) {
  if (!(eta >= 0.0 && eta <= std::numbers::pi / 2)) throw ConfigError("eta must lie in [0, pi/2]");
  return 1.0 - 1.5 * std::cos(eta);
}

/// Alive and dead branches as explicit amplitude vectors.
struct SyntheticCat {
  SpinSpace space;
  CVector alive;  ///< supported on m < 0
  CVector dead;   ///< mirror image of alive, supported on m > 0

  /// <dead|J_z|dead> - <alive|J_z|alive>.
  double extensive_difference() const {
    return branch_mean(dead) - branch_mean(alive);
  }
  /// 2 * standard deviation of J_z in the alive branch.
  double peak_width() const {
    const double mu = branch_mean(alive);
    double var = 0.0;
    for (Index k = 0; k < space.dim(); ++k) {
      const double d = space.m(k) - mu;
      var += std::norm(alive(k)) * d * d;
    }
    return 2.0 * std::sqrt(var);
  }
  CatQubitModel model(double eta) const { return {extensive_difference(), peak_width(), eta}; }

 private:
  double branch_mean(const CVector& v) const {
    double mu = 0.0;
    for (Index k = 0; k < space.dim(); ++k) mu += std::norm(v(k)) * space.m(k);
    return mu;
  }
};

inline constexpr double kOrthogonalityTol = 1e-10;

/// Gaussian branches of amplitude width sigma (probability std sigma) centred
/// at -m0 (alive) and +m0 (dead), each truncated to its own half-line.
inline SyntheticCat make_synthetic_cat(const SpinSpace& space, double center, double width) {
  if (!(width > 0.0)) throw ConfigError("peak width sigma must be > 0");
  if (!(center - 3.0 * width > 0.0)) {
    throw ConfigError("peaks overlap: need center - 3 sigma > 0 (center " + std::to_string(center) +
                      ", sigma " + std::to_string(width) + ")");
  }
  if (!(center < space.j())) throw ConfigError("peak centre must lie inside (0, j)");
  const Index d = space.dim();
  CVector alive = CVector::Zero(d);
  CVector dead = CVector::Zero(d);
  for (Index k = 0; k < d; ++k) {
    const double m = space.m(k);
    if (m < 0.0) alive(k) = std::exp(-(m + center) * (m + center) / (4.0 * width * width));
  }
  alive.normalize();
  for (Index k = 0; k < d; ++k) dead(d - 1 - k) = alive(k);

  SyntheticCat cat{space, alive, dead};
  const CMatrix jz = cartesian_ops(space).jz.matrix();
  const double overlap = std::abs(alive.dot(dead));
  const double cross = std::abs(alive.dot(jz * dead));
  if (overlap > kOrthogonalityTol || cross > kOrthogonalityTol) {
    throw ConfigError("synthetic branches are not orthogonal to tolerance");
  }
  return cat;
}

/// Qubit traced out: rho = (|a><a| + |d><d| + cos(eta) (|a><d| + |d><a|)) / 2.
inline DensityMatrix reduced_density(const SyntheticCat& cat, double eta) {
  if (!(eta >= 0.0 && eta <= std::numbers::pi / 2)) throw ConfigError("eta must lie in [0, pi/2]");
  const CVector& a = cat.alive;
  const CVector& d = cat.dead;
  CMatrix rho = 0.5 * (a * a.adjoint() + d * d.adjoint() +
                       std::cos(eta) * (a * d.adjoint() + d * a.adjoint()));
  return {cat.space, std::move(rho), DensityMatrix::Trusted{}};
}

}  // namespace catlab::cat_qubit
