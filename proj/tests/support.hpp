#pragma once

#include <random>

#include "catlab/catlab.hpp"

namespace catlab::testing {

inline CVector random_pure(const SpinSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(space.dim());
  for (Index k = 0; k < v.size(); ++k) v(k) = Complex(g(rng), g(rng));
  return v.normalized();
}

/// Wishart-type mixed state G G^dagger / Tr with G of the given rank.
inline DensityMatrix random_mixed(const SpinSpace& space, std::mt19937_64& rng, Index rank = -1) {
  std::normal_distribution<double> g;
  if (rank < 1) rank = space.dim();
  CMatrix a(space.dim(), rank);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) a(i, k) = Complex(g(rng), g(rng));
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return {space, rho};
}

inline SpinAxis random_axis(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> p(-std::numbers::pi, std::numbers::pi);
  return SpinAxis::from_imbalance(u(rng), p(rng));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace catlab::testing
