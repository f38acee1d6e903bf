#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "catlab/classical.hpp"
#include "catlab/density.hpp"

namespace catlab {

/// Sign of the tunnelling term. FigureOne puts the mean-field saddle at
/// (z, phi) = (0, pi); LiteralEq5 is the gauge-equivalent +t J_x form whose
/// saddle sits at phi = 0.
enum class SignConvention { FigureOne, LiteralEq5 };

/// How t and U couple to the collective spin.
///
/// TwoMode reads the tunnelling and imbalance operators as the two-mode
/// bilinears a^dagger b + b^dagger a = 2 J_x and n_a - n_b = 2 J_z, giving
/// H = -+ 2 t J_x + 2 U J_z^2 and Lambda_cl = U N / t. Spin uses the spin
/// operators directly: H = -+ t J_x + (U/2) J_z^2 and Lambda_cl = U N / (2 t).
enum class Normalization { TwoMode, Spin };

inline const char* to_string(SignConvention s) {
  return s == SignConvention::FigureOne ? "figure_one" : "literal_eq5";
}
inline const char* to_string(Normalization n) {
  return n == Normalization::TwoMode ? "two_mode" : "spin";
}

struct TwistTurnParams {
  SpinSpace space;
  double t_hop = 1.0;
  double u_int = 0.1;
  SignConvention sign = SignConvention::FigureOne;
  Normalization normalization = Normalization::TwoMode;

  void validate() const {
    if (!(t_hop > 0.0) || !std::isfinite(t_hop)) throw ConfigError("hopping t must be > 0");
    if (!(u_int >= 0.0) || !std::isfinite(u_int)) throw ConfigError("interaction U must be >= 0");
  }

  /// Coefficient c_x of J_x in H (sign included).
  double hopping_coefficient() const {
    const double sigma = sign == SignConvention::FigureOne ? -1.0 : 1.0;
    const double scale = normalization == Normalization::TwoMode ? 2.0 : 1.0;
    return sigma * scale * t_hop;
  }

  /// Coefficient c_zz of J_z^2 in H.
  double twist_coefficient() const {
    return normalization == Normalization::TwoMode ? 2.0 * u_int : 0.5 * u_int;
  }

  /// Lambda_cl = 2 c_zz j / |c_x|.
  classical::MeanFieldParams mean_field() const {
    return {2.0 * twist_coefficient() * space.j() / std::abs(hopping_coefficient())};
  }
};

/// H = c_x J_x + c_zz J_z^2; tridiagonal in the J_z basis.
inline HermitianOp build_hamiltonian(const TwistTurnParams& params) {
  params.validate();
  const CartesianOps ops = cartesian_ops(params.space);
  CMatrix h = params.hopping_coefficient() * ops.jx.matrix();
  for (Index k = 0; k < params.space.dim(); ++k) {
    const double m = params.space.m(k);
    h(k, k) += params.twist_coefficient() * m * m;
  }
  return {params.space, std::move(h)};
}

/// Cat-creation time T_pi = ln(8N) / (N U), in units hbar / t.
inline double t_pi(const SpinSpace& space, double u_int) {
  if (!(u_int > 0.0) || !std::isfinite(u_int)) {
    throw ConfigError("T_pi needs a positive interaction U (got " + std::to_string(u_int) + ")");
  }
  const double n = space.n_particles();
  return std::log(8.0 * n) / (n * u_int);
}

/// exp(-i H tau) rho exp(+i H tau) using one cached eigendecomposition of H.
///
/// States are moved into the energy eigenbasis once, where evolution is an
/// elementwise phase, so time sweeps cost two matrix products per point.
class Propagator {
 public:
  explicit Propagator(const HermitianOp& hamiltonian)
      : space_(hamiltonian.space()), sd_(hamiltonian.spectral()) {}

  const SpinSpace& space() const { return space_; }
  const SpectralDecomp& spectral() const { return sd_; }

  /// rho expressed in the energy eigenbasis.
  CMatrix to_eigenbasis(const DensityMatrix& rho) const {
    require_same_space(space_, rho.space());
    return sd_.eigenvectors.adjoint() * rho.matrix() * sd_.eigenvectors;
  }

  DensityMatrix evolve_eigenbasis(const CMatrix& rho_eb, double tau) const {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw ConfigError("evolution time must be >= 0");
    const Index d = sd_.dim();
    CMatrix r = rho_eb;
    for (Index l = 0; l < d; ++l) {
      for (Index k = 0; k < d; ++k) {
        r(k, l) *= std::exp(-kI * (sd_.eigenvalues(k) - sd_.eigenvalues(l)) * tau);
      }
    }
    CMatrix out = sd_.eigenvectors * r * sd_.eigenvectors.adjoint();
    out = 0.5 * (out + out.adjoint());
    return {space_, std::move(out), DensityMatrix::Trusted{}};
  }

  DensityMatrix evolve(const DensityMatrix& rho, double tau) const {
    return evolve_eigenbasis(to_eigenbasis(rho), tau);
  }

  UnitaryOp unitary(double tau) const {
    return {space_, sd_.apply([tau](double w) { return std::exp(-kI * w * tau); })};
  }

 private:
  SpinSpace space_;
  SpectralDecomp sd_;
};

inline DensityMatrix evolve(const DensityMatrix& rho, const HermitianOp& hamiltonian, double duration) {
  require_same_space(rho.space(), hamiltonian.space());
  if (!(duration >= 0.0)) throw ConfigError("evolution time must be >= 0");
  if (duration == 0.0) return rho;
  return Propagator(hamiltonian).evolve(rho, duration);
}

enum class StateLabel { PiState, ZeroState };

inline const char* to_string(StateLabel s) { return s == StateLabel::PiState ? "pi" : "zero"; }

/// Phase-space placement of an initial thermal state.
struct InitialState {
  StateLabel label;
  double beta_scaled;
  double z;
  double phi;
};

/// Pi state at (0, pi); zero state at (+z_c(0), 0) on the separatrix.
///
/// Under LiteralEq5 the whole portrait is shifted by pi in phi, so the
/// initial points move with it.
inline InitialState initial_point(StateLabel label, double beta_scaled, const TwistTurnParams& params) {
  params.validate();
  const double shift = params.sign == SignConvention::FigureOne ? 0.0 : std::numbers::pi;
  if (label == StateLabel::PiState) {
    return {label, beta_scaled, 0.0, SpinAxis::wrap_phi(std::numbers::pi + shift)};
  }
  const double zc = classical::separatrix(0.0, params.mean_field());
  return {label, beta_scaled, zc, SpinAxis::wrap_phi(shift)};
}

inline DensityMatrix initial_state(const InitialState& init, const SpinSpace& space) {
  return thermal_state(space, init.beta_scaled, init.z, init.phi);
}

struct EvolvedState {
  DensityMatrix rho;
  double elapsed;
  TwistTurnParams params;
  InitialState provenance;
};

/// Prepare the pi or zero state at beta_scaled and evolve it for time_factor * T_pi.
inline EvolvedState prepare_and_evolve(StateLabel label, double beta_scaled, double time_factor,
                                       const TwistTurnParams& params) {
  if (!(time_factor >= 0.0) || !std::isfinite(time_factor)) {
    throw ConfigError("time factor must be >= 0");
  }
  const InitialState init = initial_point(label, beta_scaled, params);
  const DensityMatrix rho0 = initial_state(init, params.space);
  const double tau = time_factor * t_pi(params.space, params.u_int);
  return {evolve(rho0, build_hamiltonian(params), tau), tau, params, init};
}

}  // namespace catlab
