#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "catlab/density.hpp"
#include "catlab/metrology.hpp"

namespace catlab {

/// Quasi-probability W(z_m, phi) on the lattice z_m = m / j and a uniform phi grid.
///
/// W(z_m, phi) = sum_n exp(i 2 n phi) <m+n| rho |m-n>, summed over every n that
/// keeps both indices in range. Terms n and -n are complex conjugates, so W is
/// real; only even index differences enter, so W has period pi in phi. The
/// phi-average at each z_m is <m|rho|m>. On the discrete grid that average
/// is exact only when phi_points > N, so no harmonic exp(2 i n phi) aliases
/// onto the constant term.
struct WignerGrid {
  std::vector<double> z_values;
  std::vector<double> phi_values;
  RMatrix values;              ///< rows z_m (ascending m), cols phi
  double max_imaginary = 0.0;  ///< largest |Im W| before it was discarded
};

inline WignerGrid wigner(const DensityMatrix& rho, int phi_points) {
  if (phi_points < 4) throw ConfigError("Wigner grid needs at least 4 phi points");
  const SpinSpace& space = rho.space();
  const Index d = space.dim();
  const CMatrix& r = rho.matrix();

  WignerGrid out;
  out.phi_values = phi_grid(phi_points);
  out.z_values.resize(static_cast<size_t>(d));
  for (Index k = 0; k < d; ++k) out.z_values[static_cast<size_t>(k)] = space.z(k);
  out.values = RMatrix::Zero(d, phi_points);

  for (Index k = 0; k < d; ++k) {
    const Index nmax = std::min(k, d - 1 - k);
    for (int c = 0; c < phi_points; ++c) {
      const double phi = out.phi_values[static_cast<size_t>(c)];
      Complex w = r(k, k);
      for (Index n = 1; n <= nmax; ++n) {
        const Complex e = std::exp(kI * (2.0 * static_cast<double>(n) * phi));
        w += e * r(k + n, k - n) + std::conj(e) * r(k - n, k + n);
      }
      out.values(k, c) = w.real();
      out.max_imaginary = std::max(out.max_imaginary, std::abs(w.imag()));
    }
  }
  return out;
}

/// Phi-average of each row; equals the J_z populations.
inline RVector wigner_marginal(const WignerGrid& w) { return w.values.rowwise().mean(); }

/// Circular spread of |W| in phi over the rows with z > 0 (upper) or z < 0.
///
/// W is pi-periodic, so the statistics use the doubled angle 2 phi and are
/// mapped back: sigma = sqrt(-2 ln R) / 2 with R = |<exp(2 i phi)>|.
/// A phi-independent ridge gives R = 0 and an infinite spread.
inline double ridge_phase_spread(const WignerGrid& w, bool upper) {
  Complex acc = 0.0;
  double total = 0.0;
  for (Index k = 0; k < w.values.rows(); ++k) {
    const double z = w.z_values[static_cast<size_t>(k)];
    if (upper ? !(z > 0.0) : !(z < 0.0)) continue;
    for (Index c = 0; c < w.values.cols(); ++c) {
      const double a = std::abs(w.values(k, c));
      acc += a * std::exp(kI * (2.0 * w.phi_values[static_cast<size_t>(c)]));
      total += a;
    }
  }
  if (!(total > 0.0)) return 0.0;
  const double resultant = std::abs(acc) / total;
  if (resultant <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * std::sqrt(-2.0 * std::log(resultant));
}

}  // namespace catlab
