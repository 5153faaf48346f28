// Command-line driver: chern, mistake-ratio, nfield, zak, egp.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nisqtopo/errors.hpp"
#include "nisqtopo/experiment.hpp"

namespace {

using namespace nisqtopo;

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": bad number '" + item + "'");
    }
  }
  return out;
}

/// Values given on the command line; unset ones leave the config untouched.
struct Flags {
  std::optional<double> mu;
  std::optional<std::string> mu_list;
  std::optional<std::string> mesh;
  std::optional<std::int64_t> shots;
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<std::string> eps1_list;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> beta;
  std::optional<int> nl;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
  std::optional<std::string> config;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--mu", f.mu, "Chemical potential (single value)");
  app.add_option("--mu-list", f.mu_list, "Comma-separated chemical potentials");
  app.add_option("--mesh", f.mesh, "Mesh size: N or NXxNY (default 8x8)");
  app.add_option("--shots", f.shots, "Shots per Hadamard test (default 5120)");
  app.add_option("--eps1", f.eps1, "Single-qubit depolarizing probability");
  app.add_option("--eps2", f.eps2, "Two-qubit depolarizing probability (default 10 eps1)");
  app.add_option("--eps1-list", f.eps1_list, "mistake-ratio sweep (default 0.005..0.015)");
  app.add_option("--trials", f.trials, "Independent seeded trials (default 1)");
  app.add_option("--seed", f.seed, "Master seed (default 0)");
  app.add_option("--mode", f.mode, "exact-oracle | noise-free-circuit | noisy-circuit");
  app.add_option("--beta", f.beta, "Inverse temperature for egp (default 2.1)");
  app.add_option("--nl", f.nl, "Loop points along kx for zak/egp (default: mesh n_kx)");
  app.add_option("--out", f.out, "Output file (default stdout)");
  app.add_option("--format", f.format, "csv | json (default csv)");
  app.add_option("--threads", f.threads, "Worker threads, 0 = all cores (default 0)");
  app.add_option("--config", f.config, "JSON config file; flags take precedence");
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig cfg;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw ConfigError("cannot open config file '" + *f.config + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    apply_config_json(cfg, j);
  }
  if (f.mu && f.mu_list) throw ConfigError("--mu and --mu-list are mutually exclusive");
  if (f.mu) cfg.mu_list = {*f.mu};
  if (f.mu_list) cfg.mu_list = parse_list(*f.mu_list, "--mu-list");
  if (f.mesh) {
    const auto x = f.mesh->find('x');
    try {
      if (x == std::string::npos) {
        cfg.n_kx = cfg.n_ky = std::stoi(*f.mesh);
      } else {
        cfg.n_kx = std::stoi(f.mesh->substr(0, x));
        cfg.n_ky = std::stoi(f.mesh->substr(x + 1));
      }
    } catch (const std::exception&) {
      throw ConfigError("--mesh: expected N or NXxNY, got '" + *f.mesh + "'");
    }
  }
  if (f.shots) cfg.shots = *f.shots;
  if (f.eps1) cfg.eps1 = *f.eps1;
  if (f.eps2) cfg.eps2 = *f.eps2;
  if (f.eps1_list) cfg.eps1_list = parse_list(*f.eps1_list, "--eps1-list");
  if (f.trials) cfg.trials = *f.trials;
  if (f.seed) cfg.seed = *f.seed;
  if (f.mode) cfg.mode = mode_from_string(*f.mode);
  if (f.beta) cfg.beta = *f.beta;
  if (f.nl) cfg.n_loop = *f.nl;
  if (f.out) cfg.out = *f.out;
  if (f.format) cfg.format = format_from_string(*f.format);
  if (f.threads) cfg.threads = *f.threads;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological invariants of the chiral p-wave model from simulated overlap circuits"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<Command> chosen;
  const std::pair<Command, const char*> commands[] = {
      {Command::chern, "Chern number per mu and trial"},
      {Command::mistake_ratio, "Fraction of wrong Chern numbers over an eps1 sweep"},
      {Command::nfield, "Integer gauge field n(k) per plaquette"},
      {Command::zak, "Zak phase profile over ky and its winding"},
      {Command::egp, "Ensemble geometric phase profile over ky and its winding"},
  };
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    add_flags(*sub, flags);
    sub->callback([&chosen, cmd = cmd] { chosen = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig cfg = build_config(flags);
    const CommandOutput output = run_command(*chosen, cfg);
    for (const auto& m : output.messages) std::cerr << m << '\n';
    if (cfg.out.empty()) {
      write_output(std::cout, *chosen, cfg, output);
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) throw ConfigError("cannot open output file '" + cfg.out + "'");
      write_output(out, *chosen, cfg, output);
    }
    return output.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
