#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "catlab/errors.hpp"

namespace catlab {

using Index = Eigen::Index;

/// Fixed-N two-mode sector viewed as a spin j = N/2.
///
/// Basis vectors are the J_z eigenstates |m>, m = -j ... +j, stored in
/// ascending order, so matrix index k corresponds to m = k - j. The Fock
/// state |m1, m2> maps to m = (m1 - m2) / 2.
class SpinSpace {
 public:
  /// Throws ConfigError unless n_particles is even and >= 2.
  static SpinSpace make(int n_particles) {
    if (n_particles < 2 || n_particles % 2 != 0) {
      throw ConfigError("particle number must be an even integer >= 2 (got " +
                        std::to_string(n_particles) + ")");
    }
    return SpinSpace(n_particles);
  }

  int n_particles() const { return n_; }
  int two_j() const { return n_; }
  double j() const { return 0.5 * n_; }
  Index dim() const { return n_ + 1; }

  /// Magnetic quantum number of basis index k.
  double m(Index k) const { return static_cast<double>(k) - j(); }
  /// Basis index of an (integer) m in [-j, j].
  Index index_of(int m) const { return static_cast<Index>(m + n_ / 2); }
  /// Scaled imbalance z = m / j of basis index k.
  double z(Index k) const { return m(k) / j(); }

  friend bool operator==(const SpinSpace&, const SpinSpace&) = default;

 private:
  explicit SpinSpace(int n) : n_(n) {}
  int n_;
};

inline SpinSpace make_space(int n_particles) { return SpinSpace::make(n_particles); }

inline void require_same_space(const SpinSpace& a, const SpinSpace& b) {
  if (!(a == b)) {
    throw DimensionMismatch("operands live on different spin spaces (N=" +
                            std::to_string(a.n_particles()) + " vs N=" +
                            std::to_string(b.n_particles()) + ")");
  }
}

/// Direction on the Bloch sphere: polar angle theta in [0, pi], azimuth phi in [-pi, pi).
struct SpinAxis {
  double theta = 0.0;
  double phi = 0.0;

  /// Same direction with angles folded into the canonical ranges.
  SpinAxis canonical() const {
    constexpr double pi = std::numbers::pi;
    double t = std::remainder(theta, 2.0 * pi);  // [-pi, pi]
    double p = phi;
    if (t < 0.0) {
      t = -t;
      p += pi;
    }
    return {t, wrap_phi(p)};
  }

  double x() const { return std::sin(theta) * std::cos(phi); }
  double y() const { return std::sin(theta) * std::sin(phi); }
  double z() const { return std::cos(theta); }

  /// Axis through the phase-space point (z, phi); z = cos(theta).
  static SpinAxis from_imbalance(double z, double phi) {
    if (!(std::abs(z) <= 1.0)) throw ConfigError("imbalance z must lie in [-1, 1]");
    return SpinAxis{std::acos(z), phi}.canonical();
  }

  static SpinAxis x_axis() { return {std::numbers::pi / 2, 0.0}; }
  static SpinAxis y_axis() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }
  static SpinAxis z_axis() { return {0.0, 0.0}; }

  static double wrap_phi(double p) {
    constexpr double pi = std::numbers::pi;
    double w = std::fmod(p + pi, 2.0 * pi);
    if (w < 0.0) w += 2.0 * pi;
    if (w >= 2.0 * pi) w = 0.0;
    return w - pi;
  }
};

}  // namespace catlab
