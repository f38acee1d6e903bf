#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "catlab/errors.hpp"

namespace catlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

inline double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// max |A - A^dagger| entrywise.
inline double hermiticity_residual(const CMatrix& a) { return max_abs(a - a.adjoint()); }

inline bool is_hermitian(const CMatrix& a, double rel_tol) {
  return hermiticity_residual(a) <= rel_tol * std::max(max_abs(a), 1.0e-300);
}

/// Eigensystem of a Hermitian matrix: eigenvalues ascending, eigenvectors as columns.
///
/// Every matrix function in the library (exponentials, thermal weights,
/// square roots of states) goes through this type.
struct SpectralDecomp {
  RVector eigenvalues;
  CMatrix eigenvectors;

  static SpectralDecomp of(const CMatrix& hermitian) {
    // Symmetrize so round-off asymmetry never leaks into the solver.
    const CMatrix sym = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("Hermitian eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
  }

  Eigen::Index dim() const { return eigenvalues.size(); }

  /// V f(Lambda) V^dagger for a scalar function f: double -> Complex (or double).
  template <typename F>
  CMatrix apply(F&& f) const {
    CVector weights(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) weights(k) = Complex(f(eigenvalues(k)));
    return eigenvectors * weights.asDiagonal() * eigenvectors.adjoint();
  }

  CMatrix reconstruct() const {
    return apply([](double x) { return x; });
  }

  /// ||V Lambda V^dagger - A||_max / ||A||_max.
  double reconstruction_error(const CMatrix& a) const {
    return max_abs(reconstruct() - a) / std::max(max_abs(a), 1.0e-300);
  }

  double orthonormality_error() const {
    const CMatrix gram = eigenvectors.adjoint() * eigenvectors;
    return max_abs(gram - CMatrix::Identity(dim(), dim()));
  }

  /// A copy with eigenvalues below zero set to zero.
  SpectralDecomp clamped_nonnegative() const {
    SpectralDecomp out = *this;
    out.eigenvalues = out.eigenvalues.cwiseMax(0.0);
    return out;
  }
};

}  // namespace catlab
