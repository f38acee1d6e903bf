#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catlab/dynamics.hpp"
#include "catlab/metrology.hpp"

namespace catlab::harness {

/// Scaled inverse temperature used when beta_inv is 0.
inline constexpr double kPureProxyBeta = 50.0;

/// 13 points, log-spaced over [0.1, 100].
inline std::vector<double> default_beta_inv_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 12; ++i) g.push_back(std::pow(10.0, -1.0 + 0.25 * i));
  return g;
}

/// 0, 0.05, ..., 2.0.
inline std::vector<double> default_time_factors() {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(0.05 * i);
  return g;
}

/// 91 points over [0, pi/2].
inline std::vector<double> default_eta_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 90; ++i) g.push_back(std::numbers::pi / 2 * i / 90.0);
  return g;
}

struct RunConfig {
  int n_particles = 200;
  double u_int = 0.1;
  double t_hop = 1.0;
  StateLabel state = StateLabel::ZeroState;
  double beta_inv = 0.0;                 ///< in units of epsilon_tau; 0 selects the pure-state proxy
  std::optional<double> time_factor;     ///< unset: 1.0 for the pi state, 1.4 for the zero state
  SignConvention sign = SignConvention::FigureOne;
  Normalization normalization = Normalization::TwoMode;

  double readout_theta = std::numbers::pi / 2;  ///< read-out rotation axis
  double readout_phi = 0.0;
  double readout_angle = std::numbers::pi / 2;

  int grid_theta = 64;
  int grid_phi = 128;
  int wigner_phi = 256;  ///< must exceed N for the phi-average to equal P(m)

  std::vector<double> time_factors = default_time_factors();
  std::vector<double> beta_inv_grid = default_beta_inv_grid();
  bool lambda_max_search = false;  ///< temp-sweep: pick the time factor maximizing Lambda per point

  std::optional<double> lambda_cl;  ///< overrides the mean-field coupling for the portrait
  double classical_t_final = 30.0;
  double classical_dt = 1e-3;
  int classical_seeds = 24;

  std::vector<double> eta_grid = default_eta_grid();
  double alpha = 2.0;
  double peak_width = 10.0;

  std::string out_dir = "out";
  unsigned workers = 1;

  double beta_scaled() const { return beta_inv == 0.0 ? kPureProxyBeta : 1.0 / beta_inv; }

  double effective_time_factor() const {
    if (time_factor) return *time_factor;
    return state == StateLabel::PiState ? 1.0 : 1.4;
  }

  ReadoutSpec readout() const { return {SpinAxis{readout_theta, readout_phi}, readout_angle}; }

  TwistTurnParams dynamics() const {
    return {SpinSpace::make(n_particles), t_hop, u_int, sign, normalization};
  }

  void validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
      throw ConfigError("config field '" + field + "': " + why);
    };
    auto finite = [](double v) { return std::isfinite(v); };

    if (n_particles < 2 || n_particles % 2 != 0) {
      fail("n_particles", "must be an even integer >= 2 (got " + std::to_string(n_particles) + ")");
    }
    if (!(u_int > 0.0) || !finite(u_int)) fail("u_int", "must be a finite value > 0");
    if (!(t_hop > 0.0) || !finite(t_hop)) fail("t_hop", "must be a finite value > 0");
    if (!(beta_inv >= 0.0) || !finite(beta_inv)) fail("beta_inv", "must be >= 0 (0 selects the pure-state proxy)");
    if (time_factor && (!(*time_factor >= 0.0) || !finite(*time_factor))) {
      fail("time_factor", "must be a finite value >= 0");
    }
    if (!finite(readout_theta) || !finite(readout_phi) || !finite(readout_angle)) {
      fail("readout", "axis angles and rotation angle must be finite");
    }
    if (grid_theta < 2) fail("grid_theta", "needs at least 2 points");
    if (grid_phi < 1) fail("grid_phi", "needs at least 1 point");
    if (wigner_phi < 4) fail("wigner_phi", "needs at least 4 points");
    if (time_factors.empty()) fail("time_factors", "must be non-empty");
    for (double f : time_factors) {
      if (!(f >= 0.0) || !finite(f)) fail("time_factors", "entries must be finite and >= 0");
    }
    if (beta_inv_grid.empty()) fail("beta_inv_grid", "must be non-empty");
    for (double b : beta_inv_grid) {
      if (!(b >= 0.0) || !finite(b)) fail("beta_inv_grid", "entries must be finite and >= 0");
    }
    if (lambda_cl && (!(*lambda_cl > 1.0) || !finite(*lambda_cl))) {
      fail("lambda_cl", "must exceed 1 so that a separatrix exists");
    }
    if (!(classical_t_final > 0.0) || !finite(classical_t_final)) fail("classical_t_final", "must be > 0");
    if (!(classical_dt > 0.0) || !(classical_dt <= classical_t_final)) {
      fail("classical_dt", "must be > 0 and no larger than classical_t_final");
    }
    if (classical_seeds < 1) fail("classical_seeds", "needs at least 1 seed");
    if (eta_grid.empty()) fail("eta_grid", "must be non-empty");
    for (double e : eta_grid) {
      if (!(e >= 0.0 && e <= std::numbers::pi / 2)) fail("eta_grid", "entries must lie in [0, pi/2]");
    }
    if (!(alpha >= 1.0) || !finite(alpha)) fail("alpha", "must be a finite value >= 1");
    if (!(peak_width > 0.0) || !finite(peak_width)) fail("peak_width", "must be a finite value > 0");
    if (out_dir.empty()) fail("out_dir", "must name a directory");
    if (workers < 1) fail("workers", "must be >= 1");
  }
};

inline StateLabel parse_state(const std::string& s) {
  if (s == "pi") return StateLabel::PiState;
  if (s == "zero" || s == "0") return StateLabel::ZeroState;
  throw ConfigError("config field 'state': expected \"pi\" or \"zero\" (got \"" + s + "\")");
}

inline SignConvention parse_sign(const std::string& s) {
  if (s == "figure_one") return SignConvention::FigureOne;
  if (s == "literal_eq5") return SignConvention::LiteralEq5;
  throw ConfigError("config field 'sign_convention': expected \"figure_one\" or \"literal_eq5\"");
}

inline Normalization parse_normalization(const std::string& s) {
  if (s == "two_mode") return Normalization::TwoMode;
  if (s == "spin") return Normalization::Spin;
  throw ConfigError("config field 'normalization': expected \"two_mode\" or \"spin\"");
}

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["n_particles"] = c.n_particles;
  j["u_int"] = c.u_int;
  j["t_hop"] = c.t_hop;
  j["state"] = to_string(c.state);
  j["beta_inv"] = c.beta_inv;
  j["time_factor"] = c.time_factor ? nlohmann::json(*c.time_factor) : nlohmann::json(nullptr);
  j["sign_convention"] = to_string(c.sign);
  j["normalization"] = to_string(c.normalization);
  j["readout_theta"] = c.readout_theta;
  j["readout_phi"] = c.readout_phi;
  j["readout_angle"] = c.readout_angle;
  j["grid_theta"] = c.grid_theta;
  j["grid_phi"] = c.grid_phi;
  j["wigner_phi"] = c.wigner_phi;
  j["time_factors"] = c.time_factors;
  j["beta_inv_grid"] = c.beta_inv_grid;
  j["lambda_max_search"] = c.lambda_max_search;
  j["lambda_cl"] = c.lambda_cl ? nlohmann::json(*c.lambda_cl) : nlohmann::json(nullptr);
  j["classical_t_final"] = c.classical_t_final;
  j["classical_dt"] = c.classical_dt;
  j["classical_seeds"] = c.classical_seeds;
  j["eta_grid"] = c.eta_grid;
  j["alpha"] = c.alpha;
  j["peak_width"] = c.peak_width;
  j["out_dir"] = c.out_dir;
  j["workers"] = c.workers;
  return j;
}

/// Missing keys keep their defaults; unknown keys and wrong types are errors.
inline RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "n_particles", "u_int", "t_hop", "state", "beta_inv", "time_factor", "sign_convention",
      "normalization", "readout_theta", "readout_phi", "readout_angle", "grid_theta", "grid_phi",
      "wigner_phi", "time_factors", "beta_inv_grid", "lambda_max_search", "lambda_cl", "classical_t_final",
      "classical_dt", "classical_seeds", "eta_grid", "alpha", "peak_width", "out_dir", "workers"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }

  RunConfig c;
  auto get = [&j](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(dst);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
  };
  auto get_opt = [&j](const char* key, std::optional<double>& dst) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    if (!j.at(key).is_number()) throw ConfigError(std::string("config field '") + key + "': expected a number");
    dst = j.at(key).get<double>();
  };
  auto get_str = [&j](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_string()) throw ConfigError(std::string("config field '") + key + "': expected a string");
    return j.at(key).get<std::string>();
  };

  get("n_particles", c.n_particles);
  get("u_int", c.u_int);
  get("t_hop", c.t_hop);
  if (auto s = get_str("state")) c.state = parse_state(*s);
  get("beta_inv", c.beta_inv);
  get_opt("time_factor", c.time_factor);
  if (auto s = get_str("sign_convention")) c.sign = parse_sign(*s);
  if (auto s = get_str("normalization")) c.normalization = parse_normalization(*s);
  get("readout_theta", c.readout_theta);
  get("readout_phi", c.readout_phi);
  get("readout_angle", c.readout_angle);
  get("grid_theta", c.grid_theta);
  get("grid_phi", c.grid_phi);
  get("wigner_phi", c.wigner_phi);
  get("time_factors", c.time_factors);
  get("beta_inv_grid", c.beta_inv_grid);
  get("lambda_max_search", c.lambda_max_search);
  get_opt("lambda_cl", c.lambda_cl);
  get("classical_t_final", c.classical_t_final);
  get("classical_dt", c.classical_dt);
  get("classical_seeds", c.classical_seeds);
  get("eta_grid", c.eta_grid);
  get("alpha", c.alpha);
  get("peak_width", c.peak_width);
  get("out_dir", c.out_dir);
  if (j.contains("workers")) {
    if (!j.at("workers").is_number_integer() || j.at("workers").get<long long>() < 1) {
      throw ConfigError("config field 'workers': must be an integer >= 1");
    }
    c.workers = j.at("workers").get<unsigned>();
  }
  c.validate();
  return c;
}

inline RunConfig config_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace catlab::harness
