#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "catlab/harness/commands.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kNumericalError = 3 };

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw catlab::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace catlab;
  using namespace catlab::harness;

  CLI::App app{"Cat-state simulator for collective-spin dynamics and metrology"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  std::optional<int> n;
  std::optional<double> u, t_hop, beta_inv, time_factor, lambda_cl, alpha;
  std::optional<std::string> state, out;
  std::optional<int> grid_theta, grid_phi;
  std::optional<unsigned> workers;

  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--n", n, "particle number N (even)");
  app.add_option("--u", u, "interaction U");
  app.add_option("--t-hop", t_hop, "hopping t");
  app.add_option("--state", state, "initial state: pi | zero");
  app.add_option("--beta-inv", beta_inv, "temperature in units of epsilon_tau (0 = pure-state proxy)");
  app.add_option("--time-factor", time_factor, "evolution time in units of T_pi");
  app.add_option("--grid-theta", grid_theta, "theta points of the axis map");
  app.add_option("--grid-phi", grid_phi, "phi points of the axis map");
  app.add_option("--out", out, "output directory");
  app.add_option("--workers", workers, "worker threads (CATLAB_WORKERS also sets this)");

  const char* names[] = {"distribution", "time-sweep", "temp-sweep", "qfi-map", "wigner", "classical", "catqubit",
                         "all-figures"};
  for (const char* name : names) {
    auto* sub = app.add_subcommand(name, std::string("run ") + name);
    if (std::string(name) == "classical" || std::string(name) == "all-figures") {
      sub->add_option("--lambda-cl", lambda_cl, "override the mean-field coupling");
    }
    if (std::string(name) == "catqubit" || std::string(name) == "all-figures") {
      sub->add_option("--alpha", alpha, "Lambda / PW of the synthetic cat");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : config_from_string(read_text(config_path));
    if (const char* env = std::getenv("CATLAB_WORKERS")) {
      try {
        const long w = std::stol(env);
        if (w < 1) throw std::invalid_argument("");
        cfg.workers = static_cast<unsigned>(w);
      } catch (const std::exception&) {
        throw ConfigError("CATLAB_WORKERS must be a positive integer (got \"" + std::string(env) + "\")");
      }
    }
    if (n) cfg.n_particles = *n;
    if (u) cfg.u_int = *u;
    if (t_hop) cfg.t_hop = *t_hop;
    if (state) cfg.state = parse_state(*state);
    if (beta_inv) cfg.beta_inv = *beta_inv;
    if (time_factor) cfg.time_factor = *time_factor;
    if (grid_theta) cfg.grid_theta = *grid_theta;
    if (grid_phi) cfg.grid_phi = *grid_phi;
    if (out) cfg.out_dir = *out;
    if (workers) cfg.workers = *workers;
    if (lambda_cl) cfg.lambda_cl = *lambda_cl;
    if (alpha) cfg.alpha = *alpha;
    cfg.validate();

    const std::string command = app.get_subcommands().front()->get_name();
    const RunManifest m = run_command(command, cfg);
    for (const auto& e : m.outputs) std::cout << cfg.out_dir << "/" << e.file << "  " << e.sha256 << "\n";
    std::cout << cfg.out_dir << "/manifest.json\n";
    return kOk;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
