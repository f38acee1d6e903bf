#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "catlab/density.hpp"
#include "catlab/operators.hpp"
#include "catlab/parallel.hpp"

namespace catlab {

// ---------------------------------------------------------------------------
// Counting statistics
// ---------------------------------------------------------------------------

/// Probability of each J_z outcome m = -j ... +j (ascending).
class JzDistribution {
 public:
  static constexpr double kNegativeTol = 1e-12;
  static constexpr double kSumTol = 1e-9;

  JzDistribution(SpinSpace space, RVector probs) : space_(space), p_(std::move(probs)) {
    if (p_.size() != space_.dim()) throw DimensionMismatch("distribution size does not match space");
    for (Index k = 0; k < p_.size(); ++k) {
      if (!std::isfinite(p_(k)) || p_(k) < -kNegativeTol) {
        throw NumericalError("distribution entry " + std::to_string(k) + " is " +
                             std::to_string(p_(k)));
      }
      p_(k) = std::max(p_(k), 0.0);
    }
    if (std::abs(p_.sum() - 1.0) > kSumTol) {
      throw NumericalError("distribution sums to " + std::to_string(p_.sum()));
    }
  }

  const SpinSpace& space() const { return space_; }
  const RVector& probs() const { return p_; }
  double operator[](Index k) const { return p_(k); }

  double mean() const {
    double s = 0.0;
    for (Index k = 0; k < p_.size(); ++k) s += p_(k) * space_.m(k);
    return s;
  }

 private:
  SpinSpace space_;
  RVector p_;
};

inline JzDistribution jz_distribution(const DensityMatrix& rho) {
  return {rho.space(), rho.populations()};
}

/// Delta_s = sqrt(<m^2> - <m>^2) over the distribution.
inline double statistical_uncertainty(const JzDistribution& dist) {
  const double mu = dist.mean();
  double var = 0.0;
  for (Index k = 0; k < dist.probs().size(); ++k) {
    const double d = dist.space().m(k) - mu;
    var += dist[k] * d * d;
  }
  return std::sqrt(std::max(var, 0.0));
}

/// Dead/alive decomposition of a counting distribution at its mean.
struct CatSplit {
  double mean = 0.0;
  RVector p_left;               ///< renormalized, support m < mean
  RVector p_right;              ///< renormalized, support m > mean
  double n_left = 0.0;          ///< weight below the mean before renormalization
  double n_right = 0.0;
  double extensive_difference = 0.0;  ///< |<m>_R - <m>_L|
  double peak_width_left = 0.0;       ///< standard deviation of p_left
  double peak_width_right = 0.0;
  bool degenerate = false;            ///< one side carries no weight
};

/// Split at <J_z> with a strict step function; a bin sitting exactly on the
/// mean (within 1e-12) belongs to neither side.
inline CatSplit cat_split(const JzDistribution& dist) {
  const SpinSpace& space = dist.space();
  const Index d = space.dim();
  CatSplit out;
  out.mean = dist.mean();
  out.p_left = RVector::Zero(d);
  out.p_right = RVector::Zero(d);
  const double at_mean_tol = 1e-12 * std::max(1.0, std::abs(out.mean));
  for (Index k = 0; k < d; ++k) {
    const double m = space.m(k);
    if (m < out.mean - at_mean_tol) {
      out.p_left(k) = dist[k];
    } else if (m > out.mean + at_mean_tol) {
      out.p_right(k) = dist[k];
    }
  }
  out.n_left = out.p_left.sum();
  out.n_right = out.p_right.sum();
  if (!(out.n_left > 0.0) || !(out.n_right > 0.0)) {
    out.degenerate = true;
    return out;
  }
  out.p_left /= out.n_left;
  out.p_right /= out.n_right;

  auto moments = [&](const RVector& p) {
    double mu = 0.0;
    double m2 = 0.0;
    for (Index k = 0; k < d; ++k) {
      mu += p(k) * space.m(k);
      m2 += p(k) * space.m(k) * space.m(k);
    }
    return std::pair{mu, std::sqrt(std::max(0.0, m2 - mu * mu))};
  };
  const auto [mu_l, w_l] = moments(out.p_left);
  const auto [mu_r, w_r] = moments(out.p_right);
  out.extensive_difference = std::abs(mu_r - mu_l);
  out.peak_width_left = w_l;
  out.peak_width_right = w_r;
  return out;
}

// ---------------------------------------------------------------------------
// Interferometric protocol
// ---------------------------------------------------------------------------

/// Read-out rotation applied before counting: U_r = exp(-i angle J(axis)).
/// The default, a pi/2 turn about x, turns the J_z count into a J_y measurement.
struct ReadoutSpec {
  SpinAxis axis = SpinAxis::x_axis();
  double angle = std::numbers::pi / 2;

  static ReadoutSpec trivial() { return {SpinAxis::z_axis(), 0.0}; }
  static ReadoutSpec measure_jy() { return {}; }

  UnitaryOp unitary(const SpinSpace& space) const { return rotation(space, angle, axis); }
};

namespace detail {

/// diag(M^dagger A M) without forming the full product.
inline RVector conjugated_diagonal(const CMatrix& a, const CMatrix& m) {
  const CMatrix am = a * m;
  RVector out(m.cols());
  for (Index c = 0; c < m.cols(); ++c) out(c) = (m.col(c).adjoint() * am.col(c))(0, 0).real();
  return out;
}

}  // namespace detail

/// p(r) = <r| U_psi^dagger rho U_psi |r>, |r> = U_r |m>, U_psi = exp(-i psi J(encoding)).
inline JzDistribution protocol_distribution(const DensityMatrix& rho, double psi,
                                            const SpinAxis& encoding_axis,
                                            const ReadoutSpec& readout) {
  const SpinSpace& space = rho.space();
  const CMatrix m = rotation(space, psi, encoding_axis).matrix() * readout.unitary(space).matrix();
  return {space, detail::conjugated_diagonal(rho.matrix(), m)};
}

// ---------------------------------------------------------------------------
// Fisher information
// ---------------------------------------------------------------------------

inline constexpr double kQfiPairCutoff = 1e-12;
inline constexpr double kCfiBinCutoff = 1e-12;

/// Reusable spectral data of rho for the QFI.
///
/// F_q = 2 sum_{l,l'} (p_l - p_l')^2 / (p_l + p_l') |<l|G|l'>|^2. The pair
/// weights depend only on rho, so they are computed once and the generator
/// enters through its matrix in the eigenbasis of rho.
class QfiKernel {
 public:
  explicit QfiKernel(const DensityMatrix& rho) : space_(rho.space()), sd_(rho.spectrum()) {
    const Index d = sd_.dim();
    weights_ = RMatrix::Zero(d, d);
    for (Index l = 0; l < d; ++l) {
      for (Index k = 0; k < d; ++k) {
        const double s = sd_.eigenvalues(l) + sd_.eigenvalues(k);
        if (s < kQfiPairCutoff) continue;
        const double diff = sd_.eigenvalues(l) - sd_.eigenvalues(k);
        weights_(l, k) = 2.0 * diff * diff / s;
      }
    }
  }

  const SpectralDecomp& spectrum() const { return sd_; }

  CMatrix to_eigenbasis(const CMatrix& g) const {
    return sd_.eigenvectors.adjoint() * g * sd_.eigenvectors;
  }

  /// QFI for a generator already expressed in the eigenbasis of rho.
  double from_eigenbasis(const CMatrix& g_eb) const {
    return std::max(0.0, (weights_.array() * g_eb.cwiseAbs2().array()).sum());
  }

  double operator()(const HermitianOp& generator) const {
    require_same_space(space_, generator.space());
    return from_eigenbasis(to_eigenbasis(generator.matrix()));
  }

 private:
  SpinSpace space_;
  SpectralDecomp sd_;
  RMatrix weights_;
};

/// Quantum Fisher information of rho for phase encoding generated by `generator`.
inline double qfi(const DensityMatrix& rho, const HermitianOp& generator) {
  return QfiKernel(rho)(generator);
}

/// Classical Fisher information of the read-out distribution, from the exact
/// derivative d p_r / d psi = <r| i[G, rho] |r> at psi = 0.
inline double cfi_commutator(const DensityMatrix& rho, const HermitianOp& generator,
                             const ReadoutSpec& readout) {
  require_same_space(rho.space(), generator.space());
  const CMatrix& r = rho.matrix();
  const CMatrix& g = generator.matrix();
  const CMatrix comm = kI * (g * r - r * g);
  const CMatrix ur = readout.unitary(rho.space()).matrix();
  const RVector p = detail::conjugated_diagonal(r, ur);
  const RVector dp = detail::conjugated_diagonal(comm, ur);
  double f = 0.0;
  for (Index k = 0; k < p.size(); ++k) {
    if (p(k) < kCfiBinCutoff) continue;
    f += dp(k) * dp(k) / p(k);
  }
  return f;
}

/// Classical Fisher information estimated the way an experiment would: central
/// differences of the protocol distribution at psi = +-delta around psi = 0.
inline double cfi_finite_difference(const DensityMatrix& rho, const SpinAxis& encoding_axis,
                                    const ReadoutSpec& readout, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("finite-difference step must be > 0");
  }
  const RVector p0 = protocol_distribution(rho, 0.0, encoding_axis, readout).probs();
  const RVector pp = protocol_distribution(rho, delta, encoding_axis, readout).probs();
  const RVector pm = protocol_distribution(rho, -delta, encoding_axis, readout).probs();
  double f = 0.0;
  for (Index k = 0; k < p0.size(); ++k) {
    if (p0(k) < kCfiBinCutoff) continue;
    const double dp = (pp(k) - pm(k)) / (2.0 * delta);
    f += dp * dp / p0(k);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// Significance thresholds on r_q carried alongside every report.
inline constexpr double kRqLooseThreshold = 0.1;
inline constexpr double kRqStrictThreshold = 2.0 / 3.0;

struct MetrologyReport {
  double delta_s = 0.0;        ///< statistical uncertainty of the generator
  double f_q = 0.0;
  double delta_q = 0.0;        ///< convex uncertainty, sqrt(F_q) / 2
  double f_c = 0.0;
  double r_q = 0.0;            ///< Delta_q / Delta_s
  double r_c = 0.0;            ///< sqrt(F_c) / 2 / Delta_s
  double lambda = 0.0;         ///< extensive difference of the J_z counts
  double reduced_lambda_q = 0.0;
  double reduced_lambda_c = 0.0;
  double n_eff_bound = 0.0;    ///< F_q / (4N)
  double purity = 0.0;
  CatSplit split;
  bool degenerate = false;     ///< Delta_s == 0, ratios undefined (reported as 0)
  bool rq_above_loose = false;   ///< r_q > 0.1
  bool rq_above_strict = false;  ///< r_q > 2/3
};

inline constexpr double kReportSlack = 1e-9;

/// Delta_s, F_q, F_c, r_q, r_c, Lambda and derived quantities for one state.
/// Lambda is always taken from the J_z counting statistics.
inline MetrologyReport metrology_report(const DensityMatrix& rho, const HermitianOp& generator,
                                        const ReadoutSpec& readout = ReadoutSpec::measure_jy()) {
  require_same_space(rho.space(), generator.space());
  MetrologyReport rep;
  rep.delta_s = std::sqrt(variance(rho, generator));
  rep.f_q = qfi(rho, generator);
  rep.delta_q = 0.5 * std::sqrt(rep.f_q);
  rep.f_c = cfi_commutator(rho, generator, readout);
  rep.split = cat_split(jz_distribution(rho));
  rep.lambda = rep.split.extensive_difference;
  rep.n_eff_bound = rep.f_q / (4.0 * rho.space().n_particles());
  rep.purity = rho.purity();

  if (rep.f_c > rep.f_q * (1.0 + 1e-6) + 1e-12) {
    throw NumericalError("Cramer-Rao chain violated: F_c = " + std::to_string(rep.f_c) +
                         " > F_q = " + std::to_string(rep.f_q));
  }
  if (rep.delta_s <= 1e-12) {
    rep.degenerate = true;
    return rep;
  }
  rep.r_q = rep.delta_q / rep.delta_s;
  rep.r_c = 0.5 * std::sqrt(rep.f_c) / rep.delta_s;
  if (rep.r_q > 1.0 + kReportSlack || rep.r_c > rep.r_q + kReportSlack) {
    throw NumericalError("quality bounds violated: r_c = " + std::to_string(rep.r_c) +
                         ", r_q = " + std::to_string(rep.r_q));
  }
  rep.reduced_lambda_q = rep.lambda * rep.r_q;
  rep.reduced_lambda_c = rep.lambda * rep.r_c;
  rep.rq_above_loose = rep.r_q > kRqLooseThreshold;
  rep.rq_above_strict = rep.r_q > kRqStrictThreshold;
  return rep;
}

inline MetrologyReport metrology_report(const DensityMatrix& rho) {
  return metrology_report(rho, cartesian_ops(rho.space()).jz);
}

// ---------------------------------------------------------------------------
// Axis map
// ---------------------------------------------------------------------------

/// theta_i = pi i / (n - 1), i = 0 .. n-1 (both poles included).
inline std::vector<double> theta_grid(int n) {
  if (n < 2) throw ConfigError("theta grid needs at least 2 points");
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = std::numbers::pi * i / (n - 1);
  return g;
}

/// phi_k = -pi + 2 pi k / n, k = 0 .. n-1.
inline std::vector<double> phi_grid(int n) {
  if (n < 1) throw ConfigError("phi grid needs at least 1 point");
  std::vector<double> g(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<size_t>(k)] = -std::numbers::pi + 2.0 * std::numbers::pi * k / n;
  return g;
}

struct QfiAxisMap {
  std::vector<double> theta;
  std::vector<double> phi;
  RMatrix values;   ///< F_q(rho, J(theta_i, phi_k)) / (4N), rows theta, cols phi
  double max_value = 0.0;
  SpinAxis argmax;
  Index argmax_theta_index = 0;
  Index argmax_phi_index = 0;
};

/// F_q / (4N) over an axis grid, reusing one eigendecomposition of rho.
/// Rows of the grid are spread over `workers` threads; the result does not
/// depend on the worker count.
inline QfiAxisMap qfi_axis_map(const DensityMatrix& rho, const std::vector<double>& thetas,
                               const std::vector<double>& phis, unsigned workers = 1) {
  if (thetas.empty() || phis.empty()) throw ConfigError("axis grids must be non-empty");
  const QfiKernel kernel(rho);
  const CartesianOps ops = cartesian_ops(rho.space());
  const CMatrix jx = kernel.to_eigenbasis(ops.jx.matrix());
  const CMatrix jy = kernel.to_eigenbasis(ops.jy.matrix());
  const CMatrix jz = kernel.to_eigenbasis(ops.jz.matrix());
  const double norm = 1.0 / (4.0 * rho.space().n_particles());

  const auto rows = parallel_map(thetas.size(), workers, [&](std::size_t i) {
    RVector row(static_cast<Index>(phis.size()));
    CMatrix g(jz.rows(), jz.cols());
    for (std::size_t k = 0; k < phis.size(); ++k) {
      const SpinAxis ax{thetas[i], phis[k]};
      g.noalias() = ax.z() * jz + ax.x() * jx + ax.y() * jy;
      row(static_cast<Index>(k)) = kernel.from_eigenbasis(g) * norm;
    }
    return row;
  });

  QfiAxisMap out;
  out.theta = thetas;
  out.phi = phis;
  out.values = RMatrix::Zero(static_cast<Index>(thetas.size()), static_cast<Index>(phis.size()));
  out.max_value = -1.0;
  for (Index i = 0; i < out.values.rows(); ++i) {
    out.values.row(i) = rows[static_cast<size_t>(i)].transpose();
    for (Index k = 0; k < out.values.cols(); ++k) {
      if (out.values(i, k) > out.max_value) {
        out.max_value = out.values(i, k);
        out.argmax = SpinAxis{thetas[static_cast<size_t>(i)], phis[static_cast<size_t>(k)]};
        out.argmax_theta_index = i;
        out.argmax_phi_index = k;
      }
    }
  }
  return out;
}

/// N_eff lower estimate: maximum of the axis map.
inline double n_eff(const DensityMatrix& rho, const std::vector<double>& thetas,
                    const std::vector<double>& phis, unsigned workers = 1) {
  return qfi_axis_map(rho, thetas, phis, workers).max_value;
}

}  // namespace catlab
