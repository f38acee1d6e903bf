#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace catlab;
using namespace catlab::cat_qubit;
using catlab::testing::rel_diff;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const SyntheticCat& fixture() {
  static const SyntheticCat cat = make_synthetic_cat(make_space(200), 33.0, 5.0);
  return cat;
}
}  // namespace

TEST_CASE("synthetic cat fixture moments and symmetry") {
  const SyntheticCat& cat = fixture();
  CHECK(cat.extensive_difference() == Approx(66.0).epsilon(1e-6));
  CHECK(cat.peak_width() == Approx(10.0).epsilon(1e-3));
  CHECK(cat.model(0.0).alpha() == Approx(6.6).epsilon(1e-3));
  for (Index k = 0; k < cat.space.dim(); ++k) CHECK(cat.alive(k) == cat.dead(cat.space.dim() - 1 - k));
  const CMatrix jz = cartesian_ops(cat.space).jz.matrix();
  CHECK(std::abs(cat.alive.dot(cat.dead)) < 1e-10);
  CHECK(std::abs(cat.alive.dot(jz * cat.dead)) < 1e-10);
}

TEST_CASE("overlapping or oversized peaks are rejected") {
  CHECK_THROWS_AS(make_synthetic_cat(make_space(200), 5.0, 5.0), ConfigError);
  CHECK_THROWS_AS(make_synthetic_cat(make_space(200), 120.0, 5.0), ConfigError);
  CHECK_THROWS_AS(make_synthetic_cat(make_space(200), 30.0, 0.0), ConfigError);
}

TEST_CASE("triangle and cross-term identities") {
  for (auto [m0, sigma] : {std::pair{33.0, 5.0}, std::pair{20.0, 3.0}, std::pair{60.0, 12.0}}) {
    const SyntheticCat cat = make_synthetic_cat(make_space(200), m0, sigma);
    const CMatrix jz = cartesian_ops(cat.space).jz.matrix();
    const double lam = cat.extensive_difference();
    const double pw = cat.peak_width();
    for (double sign : {1.0, -1.0}) {
      const CVector c = (cat.alive + sign * cat.dead) / std::sqrt(2.0);
      const CVector c_other = (cat.alive - sign * cat.dead) / std::sqrt(2.0);
      const double jz2 = (c.adjoint() * jz * jz * c)(0, 0).real();
      CHECK(std::abs(pw * pw + lam * lam - 4.0 * jz2) < 1e-8 * (4.0 * jz2));
      const double cross = std::abs((c.adjoint() * jz * c_other)(0, 0));
      CHECK(std::abs(lam * lam - 4.0 * cross * cross) < 1e-8 * lam * lam);
    }
  }
}

TEST_CASE("reduced density limits and spectrum") {
  const SyntheticCat& cat = fixture();
  const CVector plus = (cat.alive + cat.dead) / std::sqrt(2.0);
  const DensityMatrix r0 = reduced_density(cat, 0.0);
  CHECK(max_abs(r0.matrix() - plus * plus.adjoint()) < 1e-14);
  const DensityMatrix r90 = reduced_density(cat, kPi / 2);
  const CMatrix mix = 0.5 * (cat.alive * cat.alive.adjoint() + cat.dead * cat.dead.adjoint());
  CHECK(max_abs(r90.matrix() - mix) < 1e-14);

  for (double eta : {0.0, 0.3, 1.0, kPi / 2}) {
    const RVector ev = reduced_density(cat, eta).spectrum().eigenvalues;
    const Index d = ev.size();
    CHECK(std::abs(ev(d - 1) - 0.5 * (1.0 + std::cos(eta))) < 1e-9);
    CHECK(std::abs(ev(d - 2) - 0.5 * (1.0 - std::cos(eta))) < 1e-9);
    CHECK(ev.head(d - 2).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK_THROWS_AS(reduced_density(cat, 2.0), ConfigError);
}

TEST_CASE("closed forms in the limits") {
  const CatQubitModel pure{66.0, 10.0, 0.0};
  CHECK(analytic_qfi(pure) == Approx(66.0 * 66.0 + 100.0));
  CHECK(analytic_rq(pure) == Approx(1.0).epsilon(1e-15));
  const CatQubitModel mixed{66.0, 10.0, kPi / 2};
  CHECK(analytic_qfi(mixed) == Approx(100.0).epsilon(1e-12));
  CHECK(analytic_rq(mixed) == Approx(1.0 / std::sqrt(1.0 + 6.6 * 6.6)).epsilon(1e-12));
  for (double eta : {0.0, 0.4, 1.2}) {
    const CatQubitModel m{66.0, 10.0, eta};
    CHECK(reduced_extdiff(m) == Approx(m.lambda * analytic_rq(m)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(analytic_qfi(CatQubitModel{66.0, 0.0, 0.1}), ConfigError);
  CHECK_THROWS_AS(analytic_qfi(CatQubitModel{66.0, 10.0, 2.0}), ConfigError);
  CHECK(CatQubitModel{66.0, 10.0, 0.0}.in_regime());
  CHECK_FALSE(CatQubitModel{5.0, 10.0, 0.0}.in_regime());
}

TEST_CASE("closed forms match the spectral QFI on the fixture") {
  const SyntheticCat& cat = fixture();
  const HermitianOp jz = cartesian_ops(cat.space).jz;
  for (double eta : {0.0, kPi / 6, kPi / 4, kPi / 3, 5 * kPi / 12, kPi / 2}) {
    const CatQubitModel m = cat.model(eta);
    const DensityMatrix rho = reduced_density(cat, eta);
    INFO("eta " << eta);
    CHECK(rel_diff(analytic_qfi(m), qfi(rho, jz)) < 1e-6);
    CHECK(rel_diff(analytic_rq(m), metrology_report(rho, jz).r_q) < 1e-6);
  }
}

TEST_CASE("critical angle") {
  CHECK(std::cos(eta_critical(2.0)) == Approx(0.25).epsilon(1e-14));
  CHECK(eta_critical(1.0) == 0.0);
  CHECK_THROWS_AS(eta_critical(0.9), ConfigError);
  const SyntheticCat& cat = fixture();
  const CatQubitModel at_c = cat.model(eta_critical(cat.model(0.0).alpha()));
  CHECK(rel_diff(reduced_extdiff(at_c), at_c.peak_width) < 1e-6);
}

TEST_CASE("threshold Lambda r_q = PW is crossed exactly once, at the critical angle") {
  for (double alpha : {1.5, 2.0, 6.6}) {
    const double pw = 10.0;
    const double eta_c = eta_critical(alpha);
    int changes = 0;
    double prev_sign = 0.0;
    double crossing = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double eta = kPi / 2 * i / 1000.0;
      const double diff = reduced_extdiff({alpha * pw, pw, eta}) - pw;
      const double sign = diff > 0.0 ? 1.0 : -1.0;
      if (i > 0 && sign != prev_sign) {
        ++changes;
        crossing = eta;
      }
      prev_sign = sign;
    }
    CHECK(changes == 1);
    CHECK(std::abs(crossing - eta_c) <= kPi / 2 / 1000.0);
    CHECK(reduced_extdiff({alpha * pw, pw, 0.999 * eta_c}) > pw);
    CHECK(reduced_extdiff({alpha * pw, pw, std::min(kPi / 2, 1.001 * eta_c)}) < pw);
  }
}

TEST_CASE("Leggett-Garg values") {
  CHECK(lg_violation(0.0) == -0.5);
  CHECK(lg_violation(std::acos(2.0 / 3.0)) == Approx(0.0).margin(1e-15));
  CHECK(lg_violation(std::acos(1.0 / 3.0)) == Approx(0.5).epsilon(1e-14));
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = lg_violation(kPi / 2 * i / 100.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(lg_violation(-0.1), ConfigError);
}
