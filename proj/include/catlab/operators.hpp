#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "catlab/linalg.hpp"
#include "catlab/spin_space.hpp"

namespace catlab {

/// Hermitian operator on a SpinSpace.
class HermitianOp {
 public:
  static constexpr double kHermitianTol = 1e-10;

  HermitianOp(SpinSpace space, CMatrix entries) : space_(space), m_(std::move(entries)) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
      throw DimensionMismatch("operator matrix is " + std::to_string(m_.rows()) + "x" +
                              std::to_string(m_.cols()) + ", space has dim " +
                              std::to_string(space_.dim()));
    }
    if (!is_hermitian(m_, kHermitianTol)) {
      throw NumericalError("operator is not Hermitian (residual " +
                           std::to_string(hermiticity_residual(m_)) + ")");
    }
  }

  const SpinSpace& space() const { return space_; }
  const CMatrix& matrix() const { return m_; }
  Index dim() const { return space_.dim(); }

  SpectralDecomp spectral() const { return SpectralDecomp::of(m_); }

  HermitianOp squared() const { return {space_, m_ * m_}; }

  friend HermitianOp operator+(const HermitianOp& a, const HermitianOp& b) {
    require_same_space(a.space_, b.space_);
    return {a.space_, a.m_ + b.m_};
  }
  friend HermitianOp operator-(const HermitianOp& a, const HermitianOp& b) {
    require_same_space(a.space_, b.space_);
    return {a.space_, a.m_ - b.m_};
  }
  friend HermitianOp operator*(double s, const HermitianOp& a) { return {a.space_, s * a.m_}; }

 private:
  SpinSpace space_;
  CMatrix m_;
};

/// Unitary operator on a SpinSpace.
class UnitaryOp {
 public:
  static constexpr double kUnitaryTol = 1e-9;

  UnitaryOp(SpinSpace space, CMatrix entries) : space_(space), m_(std::move(entries)) {
    if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
      throw DimensionMismatch("unitary matrix does not match space dimension");
    }
    const double err = unitarity_error(m_);
    if (err > kUnitaryTol) {
      throw NumericalError("operator is not unitary (|U^dagger U - I| = " + std::to_string(err) +
                           ")");
    }
  }

  static UnitaryOp identity(const SpinSpace& space) {
    return {space, CMatrix::Identity(space.dim(), space.dim())};
  }

  const SpinSpace& space() const { return space_; }
  const CMatrix& matrix() const { return m_; }

  UnitaryOp adjoint() const { return {space_, m_.adjoint()}; }

  /// U^dagger A U.
  HermitianOp heisenberg(const HermitianOp& a) const {
    require_same_space(space_, a.space());
    return {space_, m_.adjoint() * a.matrix() * m_};
  }

  friend UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b) {
    require_same_space(a.space_, b.space_);
    return {a.space_, a.m_ * b.m_};
  }

  static double unitarity_error(const CMatrix& u) {
    return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
  }

 private:
  SpinSpace space_;
  CMatrix m_;
};

struct CartesianOps {
  HermitianOp jz;
  HermitianOp jx;
  HermitianOp jy;
};

/// J_+ in the ascending Dicke basis: <m+1|J_+|m> = sqrt(j(j+1) - m(m+1)).
inline CMatrix raising_matrix(const SpinSpace& space) {
  const Index d = space.dim();
  const double j = space.j();
  CMatrix jp = CMatrix::Zero(d, d);
  for (Index k = 0; k + 1 < d; ++k) {
    const double m = space.m(k);
    jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

inline CartesianOps cartesian_ops(const SpinSpace& space) {
  const Index d = space.dim();
  CMatrix jz = CMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) jz(k, k) = space.m(k);
  const CMatrix jp = raising_matrix(space);
  const CMatrix jm = jp.adjoint();
  CMatrix jx = 0.5 * (jp + jm);
  CMatrix jy = (jp - jm) / Complex(0.0, 2.0);
  return {HermitianOp(space, std::move(jz)), HermitianOp(space, std::move(jx)),
          HermitianOp(space, std::move(jy))};
}

/// J(theta, phi) = J_z cos(theta) + J_x sin(theta) cos(phi) + J_y sin(theta) sin(phi).
inline HermitianOp axis_op(const CartesianOps& ops, const SpinAxis& axis) {
  return {ops.jz.space(), axis.z() * ops.jz.matrix() + axis.x() * ops.jx.matrix() +
                              axis.y() * ops.jy.matrix()};
}

inline HermitianOp axis_op(const SpinSpace& space, const SpinAxis& axis) {
  return axis_op(cartesian_ops(space), axis);
}

/// exp(-i * alpha * generator), evaluated spectrally.
inline UnitaryOp exp_minus_i(const HermitianOp& generator, double alpha) {
  if (!std::isfinite(alpha)) throw ConfigError("rotation angle must be finite");
  const SpectralDecomp sd = generator.spectral();
  return {generator.space(), sd.apply([alpha](double w) { return std::exp(-kI * alpha * w); })};
}

/// U(alpha, theta, phi) = exp(-i alpha J(theta, phi)).
inline UnitaryOp rotation(const SpinSpace& space, double alpha, const SpinAxis& axis) {
  return exp_minus_i(axis_op(space, axis), alpha);
}

}  // namespace catlab
