#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "catlab/operators.hpp"

namespace catlab {

/// Mixed state on a SpinSpace.
///
/// Construction checks Hermiticity (relative 1e-10) and unit trace (1e-10).
/// Positivity costs an eigensolve, so it is checked only on the public
/// constructor; operations that provably preserve positivity (unitary
/// conjugation, spectral construction from nonnegative weights) use the
/// trusted path.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = 1e-10;

  struct Trusted {};

  DensityMatrix(SpinSpace space, CMatrix entries) : DensityMatrix(space, std::move(entries), Trusted{}) {
    const RVector evals = SpectralDecomp::of(m_).eigenvalues;
    if (evals.size() > 0 && evals.minCoeff() < -kPositivityTol) {
      throw NumericalError("density matrix has negative eigenvalue " +
                           std::to_string(evals.minCoeff()));
    }
  }

  DensityMatrix(SpinSpace space, CMatrix entries, Trusted) : space_(space), m_(std::move(entries)) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
      throw DimensionMismatch("density matrix does not match space dimension");
    }
    if (!is_hermitian(m_, kHermitianTol)) {
      throw NumericalError("density matrix is not Hermitian (residual " +
                           std::to_string(hermiticity_residual(m_)) + ")");
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
      throw NumericalError("density matrix trace is " + std::to_string(tr.real()) + " + " +
                           std::to_string(tr.imag()) + "i, expected 1");
    }
  }

  static DensityMatrix maximally_mixed(const SpinSpace& space) {
    const Index d = space.dim();
    return {space, CMatrix::Identity(d, d) / static_cast<double>(d), Trusted{}};
  }

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const SpinSpace& space, const CVector& psi) {
    if (psi.size() != space.dim()) throw DimensionMismatch("state vector does not match space");
    const double norm2 = psi.squaredNorm();
    if (!(norm2 > 0.0)) throw ConfigError("state vector must be nonzero");
    return {space, psi * psi.adjoint() / norm2, Trusted{}};
  }

  /// sum_k w_k |v_k><v_k| from a spectral decomposition; weights are clamped and renormalized.
  static DensityMatrix from_spectrum(const SpinSpace& space, const SpectralDecomp& sd) {
    RVector w = sd.eigenvalues.cwiseMax(0.0);
    const double total = w.sum();
    if (!(total > 0.0)) throw NumericalError("spectral weights sum to zero");
    w /= total;
    CMatrix m = sd.eigenvectors * w.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
    return {space, std::move(m), Trusted{}};
  }

  const SpinSpace& space() const { return space_; }
  const CMatrix& matrix() const { return m_; }
  Index dim() const { return space_.dim(); }

  /// Eigensystem with round-off negative eigenvalues clamped to zero.
  SpectralDecomp spectrum() const { return SpectralDecomp::of(m_).clamped_nonnegative(); }

  double purity() const { return (m_ * m_).trace().real(); }

  /// Diagonal in the J_z basis.
  RVector populations() const { return m_.diagonal().real(); }

 private:
  SpinSpace space_;
  CMatrix m_;
};

inline constexpr double kImaginaryResidueTol = 1e-9;

/// Tr[A rho]; throws if the imaginary residue exceeds 1e-9 (relative to ||A||).
inline double expectation(const DensityMatrix& rho, const HermitianOp& a) {
  require_same_space(rho.space(), a.space());
  // Tr[A rho] = sum_ij A_ij rho_ji.
  const Complex v = (a.matrix().transpose().cwiseProduct(rho.matrix())).sum();
  if (std::abs(v.imag()) > kImaginaryResidueTol * std::max(1.0, max_abs(a.matrix()))) {
    throw NumericalError("expectation value has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

/// Tr[A^2 rho] - Tr[A rho]^2, clamped at zero.
inline double variance(const DensityMatrix& rho, const HermitianOp& a) {
  const double mean = expectation(rho, a);
  const double second = expectation(rho, a.squared());
  const double var = second - mean * mean;
  if (var < -1e-9 * std::max(1.0, second)) {
    throw NumericalError("negative variance " + std::to_string(var));
  }
  return std::max(var, 0.0);
}

/// <psi| rho |psi> for a normalized psi.
inline double fidelity_with_pure(const DensityMatrix& rho, const CVector& psi) {
  return (psi.adjoint() * rho.matrix() * psi)(0, 0).real() / psi.squaredNorm();
}

/// rho(beta, z, phi) = exp(beta * J(acos z, phi)) / Tr[...].
///
/// The exponent is positive, so large beta selects the maximal eigenvector of
/// J(acos z, phi): the spin coherent state pointing at phase-space point (z, phi).
inline DensityMatrix thermal_state(const SpinSpace& space, double beta_scaled, double z, double phi) {
  if (!(std::abs(z) <= 1.0)) throw ConfigError("imbalance z must lie in [-1, 1]");
  if (!(beta_scaled >= 0.0) || !std::isfinite(beta_scaled)) {
    throw ConfigError("scaled inverse temperature must be finite and >= 0");
  }
  SpectralDecomp sd = axis_op(space, SpinAxis::from_imbalance(z, phi)).spectral();
  const double top = sd.eigenvalues.maxCoeff();
  for (Index k = 0; k < sd.dim(); ++k) {
    sd.eigenvalues(k) = std::exp(beta_scaled * (sd.eigenvalues(k) - top));
  }
  return DensityMatrix::from_spectrum(space, sd);
}

/// Zero-temperature limit of thermal_state: projector onto the top eigenvector.
inline CVector coherent_state(const SpinSpace& space, const SpinAxis& axis) {
  const SpectralDecomp sd = axis_op(space, axis).spectral();
  return sd.eigenvectors.col(sd.dim() - 1);
}

}  // namespace catlab
