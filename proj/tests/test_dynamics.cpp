#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace catlab;
using Catch::Approx;

namespace {

TwistTurnParams params_for(int n, double u = 0.1, double t = 1.0,
                           Normalization norm = Normalization::TwoMode,
                           SignConvention sign = SignConvention::FigureOne) {
  return {make_space(n), t, u, sign, norm};
}

}  // namespace

TEST_CASE("Hamiltonian is tridiagonal with the expected coefficients") {
  const auto p = params_for(20, 0.3, 0.7);
  const CMatrix h = build_hamiltonian(p).matrix();
  for (Index r = 0; r < h.rows(); ++r)
    for (Index c = 0; c < h.cols(); ++c)
      if (std::abs(r - c) > 1) CHECK(h(r, c) == Complex(0.0));
  const CMatrix expected = -2.0 * 0.7 * cartesian_ops(p.space).jx.matrix();
  CHECK(std::abs(h(0, 1) - expected(0, 1)) < 1e-14);
  CHECK(h(0, 0).real() == Approx(2.0 * 0.3 * 100.0));
}

TEST_CASE("spin normalization: pure twist and pure turn limits") {
  const auto twist = params_for(10, 0.4, 1e-300, Normalization::Spin);
  const CMatrix h = build_hamiltonian(twist).matrix();
  for (Index k = 0; k < h.rows(); ++k) {
    const double m = twist.space.m(k);
    CHECK(h(k, k).real() == Approx(0.2 * m * m).margin(1e-12));
  }
  const auto turn = params_for(10, 0.0, 1.3, Normalization::Spin);
  const SpectralDecomp sd = build_hamiltonian(turn).spectral();
  for (Index k = 0; k < sd.dim(); ++k) CHECK(sd.eigenvalues(k) == Approx(1.3 * turn.space.m(k)).margin(1e-9));
}

TEST_CASE("invalid Hamiltonian parameters are rejected") {
  CHECK_THROWS_AS(build_hamiltonian(params_for(10, -0.1)), ConfigError);
  CHECK_THROWS_AS(build_hamiltonian(params_for(10, 0.1, 0.0)), ConfigError);
}

TEST_CASE("mean-field coupling per normalization") {
  CHECK(params_for(200).mean_field().lambda_cl == Approx(20.0));
  CHECK(params_for(200, 0.1, 1.0, Normalization::Spin).mean_field().lambda_cl == Approx(10.0));
  CHECK(params_for(200, 0.1, 1.0, Normalization::TwoMode, SignConvention::LiteralEq5).mean_field().lambda_cl ==
        Approx(20.0));
}

TEST_CASE("cat creation time") {
  CHECK(t_pi(make_space(200), 0.1) == Approx(std::log(1600.0) / 20.0).epsilon(1e-14));
  // Rounded reference values, good to about 1e-4.
  CHECK(t_pi(make_space(200), 0.1) == Approx(0.36894).margin(1e-4));
  CHECK(t_pi(make_space(800), 0.1) == Approx(0.10948).margin(1e-4));
  CHECK(t_pi(make_space(800), 0.1) == Approx(std::log(6400.0) / 80.0).epsilon(1e-14));
  CHECK_THROWS_AS(t_pi(make_space(200), 0.0), ConfigError);
  CHECK_THROWS_AS(t_pi(make_space(200), -1.0), ConfigError);
}

TEST_CASE("evolution preserves spectrum, purity and energy") {
  std::mt19937_64 rng(8);
  const auto p = params_for(60, 0.2);
  const HermitianOp h = build_hamiltonian(p);
  const Propagator prop(h);
  const DensityMatrix rho = catlab::testing::random_mixed(p.space, rng, 4);
  const double e0 = expectation(rho, h);
  const RVector spec0 = rho.spectrum().eigenvalues;
  CHECK(max_abs(evolve(rho, h, 0.0).matrix() - rho.matrix()) == 0.0);
  for (double tau : {0.05, 0.4, 3.0}) {
    const DensityMatrix r = prop.evolve(rho, tau);
    CHECK(std::abs(r.matrix().trace().real() - 1.0) < 1e-9);
    CHECK(hermiticity_residual(r.matrix()) < 1e-9);
    CHECK(std::abs(r.purity() - rho.purity()) < 1e-8);
    CHECK(std::abs(expectation(r, h) - e0) < 1e-8 * max_abs(h.matrix()));
    CHECK((r.spectrum().eigenvalues - spec0).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("propagator matches the explicit unitary") {
  const auto p = params_for(30, 0.15);
  const HermitianOp h = build_hamiltonian(p);
  const Propagator prop(h);
  const DensityMatrix rho = thermal_state(p.space, 2.0, 0.2, 0.4);
  const CMatrix u = prop.unitary(0.7).matrix();
  CHECK(max_abs(prop.evolve(rho, 0.7).matrix() - u * rho.matrix() * u.adjoint()) < 1e-10);
  CHECK_THROWS_AS(prop.evolve(rho, -1.0), ConfigError);
  CHECK_THROWS_AS(evolve(DensityMatrix::maximally_mixed(make_space(4)), h, 1.0), DimensionMismatch);
}

TEST_CASE("initial points sit on the saddle and on the separatrix") {
  const auto p = params_for(200);
  const InitialState pi = initial_point(StateLabel::PiState, 50.0, p);
  CHECK(pi.z == 0.0);
  CHECK(std::abs(std::abs(pi.phi) - std::numbers::pi) < 1e-15);
  const InitialState zero = initial_point(StateLabel::ZeroState, 50.0, p);
  const double zc = classical::separatrix(0.0, p.mean_field());
  CHECK(zero.z == zc);
  CHECK(zero.phi == 0.0);
  CHECK(classical::classical_energy({zero.z, zero.phi}, p.mean_field()) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pi state stays symmetric under evolution") {
  const auto p = params_for(200);
  for (double beta : {50.0, 0.1}) {
    const EvolvedState ev = prepare_and_evolve(StateLabel::PiState, beta, 1.0, p);
    const RVector pop = ev.rho.populations();
    for (Index k = 0; k < pop.size(); ++k) CHECK(std::abs(pop(k) - pop(pop.size() - 1 - k)) < 1e-6);
    CHECK(ev.elapsed == Approx(t_pi(p.space, 0.1)));
  }
}

TEST_CASE("pi state at time zero is a single peak and splits later") {
  const auto p = params_for(200);
  const CatSplit before = cat_split(jz_distribution(prepare_and_evolve(StateLabel::PiState, 50.0, 0.0, p).rho));
  CHECK(before.extensive_difference < 20.0);
  const RVector pop0 = prepare_and_evolve(StateLabel::PiState, 50.0, 0.0, p).rho.populations();
  Index argmax = 0;
  pop0.maxCoeff(&argmax);
  CHECK(argmax == 100);
  const CatSplit after = cat_split(jz_distribution(prepare_and_evolve(StateLabel::PiState, 50.0, 1.0, p).rho));
  CHECK(after.extensive_difference > 50.0);
}

TEST_CASE("sign conventions are gauge equivalent") {
  for (StateLabel label : {StateLabel::PiState, StateLabel::ZeroState}) {
    const auto a = prepare_and_evolve(label, 3.0, 1.2, params_for(80, 0.25));
    const auto b = prepare_and_evolve(
        label, 3.0, 1.2, params_for(80, 0.25, 1.0, Normalization::TwoMode, SignConvention::LiteralEq5));
    CHECK((a.rho.populations() - b.rho.populations()).cwiseAbs().maxCoeff() < 1e-8);
    const JzDistribution da = jz_distribution(a.rho), db = jz_distribution(b.rho);
    CHECK(std::abs(cat_split(da).extensive_difference - cat_split(db).extensive_difference) < 1e-8);
    const HermitianOp jz = cartesian_ops(a.rho.space()).jz;
    CHECK(std::abs(qfi(a.rho, jz) - qfi(b.rho, jz)) < 1e-8 * std::max(1.0, qfi(a.rho, jz)));
    const UnitaryOp gauge = rotation(a.rho.space(), -std::numbers::pi, SpinAxis::z_axis());
    const CMatrix mapped = gauge.matrix() * a.rho.matrix() * gauge.matrix().adjoint();
    CHECK(max_abs(mapped - b.rho.matrix()) < 1e-8);
  }
}

TEST_CASE("cold zero state produces a cat of the expected size") {
  const auto ev = prepare_and_evolve(StateLabel::ZeroState, 50.0, 1.4, params_for(200));
  const CatSplit s = cat_split(jz_distribution(ev.rho));
  CHECK(s.extensive_difference == Approx(66.44).margin(0.1));
  CHECK(std::abs(ev.rho.purity() - 1.0) < 1e-8);
}

TEST_CASE("negative time factors are rejected") {
  CHECK_THROWS_AS(prepare_and_evolve(StateLabel::PiState, 50.0, -0.1, params_for(20)), ConfigError);
}
