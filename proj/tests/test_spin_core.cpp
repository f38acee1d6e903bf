#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace catlab;
using catlab::testing::random_axis;
using Catch::Approx;

TEST_CASE("space dimensions follow N") {
  const SpinSpace s = make_space(200);
  CHECK(s.dim() == 201);
  CHECK(s.j() == 100.0);
  CHECK(make_space(2).dim() == 3);
  CHECK(make_space(2).j() == 1.0);
  CHECK(s.m(0) == -100.0);
  CHECK(s.m(200) == 100.0);
  CHECK(s.index_of(-3) == 97);
}

TEST_CASE("odd or tiny particle numbers are rejected") {
  CHECK_THROWS_AS(make_space(3), ConfigError);
  CHECK_THROWS_AS(make_space(0), ConfigError);
  CHECK_THROWS_AS(make_space(-4), ConfigError);
}

TEST_CASE("spin-1 matrices have their textbook entries") {
  const SpinSpace s = make_space(2);
  const CartesianOps ops = cartesian_ops(s);
  CHECK(ops.jz.matrix()(0, 0).real() == -1.0);
  CHECK(ops.jz.matrix()(1, 1).real() == 0.0);
  CHECK(ops.jz.matrix()(2, 2).real() == 1.0);
  const CMatrix jp = raising_matrix(s);
  CHECK(jp(1, 0).real() == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(jp(0, 1)) == 0.0);
}

TEST_CASE("SU(2) commutators and the Casimir hold for several spins") {
  for (int n : {2, 7 * 2, 50, 200}) {
    const SpinSpace s = make_space(n);
    const auto ops = cartesian_ops(s);
    const CMatrix& x = ops.jx.matrix();
    const CMatrix& y = ops.jy.matrix();
    const CMatrix& z = ops.jz.matrix();
    CHECK(max_abs(x * y - y * x - kI * z) < 1e-9);
    CHECK(max_abs(y * z - z * y - kI * x) < 1e-9);
    CHECK(max_abs(z * x - x * z - kI * y) < 1e-9);
    const CMatrix casimir = x * x + y * y + z * z;
    const double jj = s.j() * (s.j() + 1.0);
    CHECK(max_abs(casimir - jj * CMatrix::Identity(s.dim(), s.dim())) < 1e-8 * std::max(1.0, jj));
  }
}

TEST_CASE("axis operator special directions") {
  const SpinSpace s = make_space(10);
  const auto ops = cartesian_ops(s);
  CHECK(max_abs(axis_op(s, {0.0, 0.7}).matrix() - ops.jz.matrix()) < 1e-14);
  CHECK(max_abs(axis_op(s, SpinAxis::x_axis()).matrix() - ops.jx.matrix()) < 1e-14);
  CHECK(max_abs(axis_op(s, SpinAxis::y_axis()).matrix() - ops.jy.matrix()) < 1e-14);
}

TEST_CASE("axis operator spectrum is -j..j for any axis") {
  std::mt19937_64 rng(11);
  const SpinSpace s = make_space(40);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralDecomp sd = axis_op(s, random_axis(rng)).spectral();
    for (Index k = 0; k < sd.dim(); ++k) CHECK(std::abs(sd.eigenvalues(k) - s.m(k)) < 1e-8);
  }
}

TEST_CASE("axis canonicalization lands in the stated ranges") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const SpinAxis raw{u(rng), u(rng)};
    const SpinAxis c = raw.canonical();
    CHECK(c.theta >= 0.0);
    CHECK(c.theta <= std::numbers::pi);
    CHECK(c.phi >= -std::numbers::pi);
    CHECK(c.phi < std::numbers::pi);
    CHECK(std::abs(c.x() - raw.x()) < 1e-12);
    CHECK(std::abs(c.y() - raw.y()) < 1e-12);
    CHECK(std::abs(c.z() - raw.z()) < 1e-12);
  }
}

TEST_CASE("rotations: identity, 2 pi periodicity and the J_y read-out") {
  const SpinSpace s = make_space(20);
  const CMatrix id = CMatrix::Identity(s.dim(), s.dim());
  std::mt19937_64 rng(3);
  CHECK(max_abs(rotation(s, 0.0, random_axis(rng)).matrix() - id) < 1e-12);
  for (int i = 0; i < 5; ++i) {
    CHECK(max_abs(rotation(s, 2.0 * std::numbers::pi, random_axis(rng)).matrix() - id) < 1e-8);
  }
  const auto ops = cartesian_ops(s);
  const UnitaryOp u = rotation(s, std::numbers::pi / 2, SpinAxis::x_axis());
  const CMatrix jz_rot = u.heisenberg(ops.jz).matrix();
  const double plus = max_abs(jz_rot - ops.jy.matrix());
  const double minus = max_abs(jz_rot + ops.jy.matrix());
  CHECK(std::min(plus, minus) < 1e-9);
}

TEST_CASE("non-unitary and non-Hermitian matrices are rejected") {
  const SpinSpace s = make_space(2);
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOp(s, a), NumericalError);
  CHECK_THROWS_AS(UnitaryOp(s, 2.0 * CMatrix::Identity(3, 3)), NumericalError);
  CHECK_THROWS_AS(HermitianOp(s, CMatrix::Identity(4, 4)), DimensionMismatch);
}

TEST_CASE("spectral decomposition reconstructs and is orthonormal") {
  std::mt19937_64 rng(9);
  const SpinSpace s = make_space(30);
  const DensityMatrix r = catlab::testing::random_mixed(s, rng);
  const SpectralDecomp sd = SpectralDecomp::of(r.matrix());
  CHECK(max_abs(sd.reconstruct() - r.matrix()) <= 1e-8 * max_abs(r.matrix()));
  CHECK(max_abs(sd.eigenvectors.adjoint() * sd.eigenvectors - CMatrix::Identity(s.dim(), s.dim())) < 1e-9);
  for (Index k = 1; k < sd.dim(); ++k) CHECK(sd.eigenvalues(k) >= sd.eigenvalues(k - 1));
}

TEST_CASE("thermal state limits") {
  const SpinSpace s = make_space(200);
  const DensityMatrix hot = thermal_state(s, 0.0, 0.3, 1.0);
  CHECK(max_abs(hot.matrix() - CMatrix::Identity(201, 201) / 201.0) < 1e-12);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 3; ++i) {
    const SpinAxis ax = random_axis(rng);
    const DensityMatrix cold = thermal_state(s, 50.0, ax.z(), ax.phi);
    CHECK(fidelity_with_pure(cold, coherent_state(s, ax)) > 0.999);
  }
  const DensityMatrix pi_hot = thermal_state(s, 0.1, 0.0, std::numbers::pi);
  CHECK(std::abs(pi_hot.matrix().trace().real() - 1.0) < 1e-10);
  CHECK(pi_hot.purity() < 0.5);
}

TEST_CASE("thermal state arguments are validated") {
  const SpinSpace s = make_space(4);
  CHECK_THROWS_AS(thermal_state(s, 1.0, 1.5, 0.0), ConfigError);
  CHECK_THROWS_AS(thermal_state(s, -1.0, 0.0, 0.0), ConfigError);
}

TEST_CASE("thermal state commutes with its axis and equals a rotated polar state") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> up(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> ub(0.05, 5.0);
  const SpinSpace s = make_space(24);
  const auto ops = cartesian_ops(s);
  for (int i = 0; i < 10; ++i) {
    const double z = uz(rng), phi = up(rng), beta = ub(rng);
    const DensityMatrix rho = thermal_state(s, beta, z, phi);
    const CMatrix a = axis_op(s, SpinAxis::from_imbalance(z, phi)).matrix();
    CHECK(max_abs(rho.matrix() * a - a * rho.matrix()) < 1e-9);

    const DensityMatrix polar = thermal_state(s, beta, 1.0, 0.0);
    const CMatrix r = exp_minus_i(ops.jz, phi).matrix() * exp_minus_i(ops.jy, std::acos(z)).matrix();
    CHECK(max_abs(r * polar.matrix() * r.adjoint() - rho.matrix()) < 1e-8);
  }
}

TEST_CASE("expectation and variance on simple states") {
  const SpinSpace s = make_space(40);
  const auto ops = cartesian_ops(s);
  CHECK(std::abs(expectation(DensityMatrix::maximally_mixed(s), ops.jz)) < 1e-12);
  const DensityMatrix north = DensityMatrix::pure(s, coherent_state(s, SpinAxis::z_axis()));
  CHECK(expectation(north, ops.jz) == Approx(20.0).epsilon(1e-12));
  CHECK(variance(north, ops.jz) == Approx(0.0).margin(1e-9));
  const DensityMatrix east = DensityMatrix::pure(s, coherent_state(s, SpinAxis::x_axis()));
  CHECK(variance(east, ops.jz) == Approx(10.0).epsilon(1e-9));
  CHECK_THROWS_AS(expectation(north, cartesian_ops(make_space(4)).jz), DimensionMismatch);
}

TEST_CASE("density matrices reject broken inputs") {
  const SpinSpace s = make_space(2);
  CHECK_THROWS_AS(DensityMatrix(s, CMatrix::Identity(3, 3)), NumericalError);
  CMatrix neg = CMatrix::Zero(3, 3);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(s, neg), NumericalError);
}

TEST_CASE("state constructors pass the density matrix checks") {
  std::mt19937_64 rng(2);
  const SpinSpace s = make_space(16);
  for (int i = 0; i < 5; ++i) {
    const SpinAxis ax = random_axis(rng);
    CHECK_NOTHROW(DensityMatrix(s, thermal_state(s, 0.7, ax.z(), ax.phi).matrix()));
    CHECK_NOTHROW(DensityMatrix(s, DensityMatrix::pure(s, coherent_state(s, ax)).matrix()));
  }
}
