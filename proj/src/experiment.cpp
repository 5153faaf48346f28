#include "nisqtopo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "nisqtopo/errors.hpp"
#include "nisqtopo/rng.hpp"

namespace nisqtopo {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::exact_oracle: return "exact-oracle";
    case Mode::noise_free_circuit: return "noise-free-circuit";
    case Mode::noisy_circuit: return "noisy-circuit";
  }
  return "?";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

const char* to_string(Command c) {
  switch (c) {
    case Command::chern: return "chern";
    case Command::mistake_ratio: return "mistake-ratio";
    case Command::nfield: return "nfield";
    case Command::zak: return "zak";
    case Command::egp: return "egp";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  for (auto m : {Mode::exact_oracle, Mode::noise_free_circuit, Mode::noisy_circuit}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown mode '" + s + "'");
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("unknown format '" + s + "'");
}

Command command_from_string(const std::string& s) {
  for (auto c : {Command::chern, Command::mistake_ratio, Command::nfield, Command::zak,
                 Command::egp}) {
    if (s == to_string(c)) return c;
  }
  throw ConfigError("unknown command '" + s + "'");
}

// ---------------------------------------------------------------------------

NoiseModel ExperimentConfig::noise() const {
  if (mode != Mode::noisy_circuit) return {};
  return NoiseModel::make(eps1, eps2_value());
}

MeshGrid ExperimentConfig::mesh(Command cmd) const {
  const bool loop = cmd == Command::zak || cmd == Command::egp;
  return MeshGrid(loop && n_loop ? *n_loop : n_kx, n_ky);
}

std::vector<double> ExperimentConfig::sweep() const {
  if (!eps1_list.empty()) return eps1_list;
  std::vector<double> s;
  for (int m = 5; m <= 15; ++m) s.push_back(m / 1000.0);
  return s;
}

void ExperimentConfig::validate(Command cmd) const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  auto prob = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (mu_list.empty()) fail("mu list is empty");
  for (double mu : mu_list) {
    if (!std::isfinite(mu)) fail("mu must be finite");
  }
  if (cmd != Command::chern && mu_list.size() != 1) {
    fail(std::string(to_string(cmd)) + " takes exactly one mu");
  }
  if (n_kx < 2 || n_ky < 2 || n_kx > 256 || n_ky > 256) fail("mesh sizes must be in [2, 256]");
  if (n_loop && (*n_loop < 2 || *n_loop > 256)) fail("--nl must be in [2, 256]");
  if (shots < 1) fail("shots must be >= 1");
  if (trials < 1) fail("trials must be >= 1");
  if (!prob(eps1)) fail("eps1 must be in [0, 1]");
  if (!prob(eps2_value())) fail("eps2 must be in [0, 1]");
  if (cmd == Command::mistake_ratio) {
    if (eps2) fail("mistake-ratio couples eps2 = 10 eps1; do not set eps2");
    for (double e : sweep()) {
      if (!prob(e) || !prob(10.0 * e)) fail("eps1 sweep values must satisfy 0 <= 10 eps1 <= 1");
    }
  }
  if (cmd == Command::egp && !(beta > 0.0 && std::isfinite(beta))) fail("beta must be positive");
  const MeshGrid m = mesh(cmd);
  for (double mu : mu_list) {
    if (m.min_gap(ModelParams(mu)) < kDefaultGapTolerance) {
      fail("the gap closes on the mesh at mu = " + format_double(mu));
    }
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"mu_list", mu_list},
          {"mesh", {n_kx, n_ky}},
          {"shots", shots},
          {"eps1", eps1},
          {"eps2", eps2_value()},
          {"eps1_list", eps1_list},
          {"trials", trials},
          {"seed", seed},
          {"mode", to_string(mode)},
          {"beta", beta},
          {"nl", n_loop ? nlohmann::json(*n_loop) : nlohmann::json(nullptr)},
          {"format", to_string(format)}};
}

void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "mu") {
        cfg.mu_list = {v.get<double>()};
      } else if (key == "mu_list") {
        cfg.mu_list = v.get<std::vector<double>>();
      } else if (key == "mesh") {
        if (v.is_number_integer()) {
          cfg.n_kx = cfg.n_ky = v.get<int>();
        } else {
          const auto m = v.get<std::vector<int>>();
          if (m.size() != 2) throw ConfigError("mesh must be an integer or [n_kx, n_ky]");
          cfg.n_kx = m[0];
          cfg.n_ky = m[1];
        }
      } else if (key == "shots") {
        cfg.shots = v.get<std::int64_t>();
      } else if (key == "eps1") {
        cfg.eps1 = v.get<double>();
      } else if (key == "eps2") {
        if (v.is_null()) {
          cfg.eps2.reset();
        } else {
          cfg.eps2 = v.get<double>();
        }
      } else if (key == "eps1_list") {
        cfg.eps1_list = v.get<std::vector<double>>();
      } else if (key == "trials") {
        cfg.trials = v.get<int>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "mode") {
        cfg.mode = mode_from_string(v.get<std::string>());
      } else if (key == "beta") {
        cfg.beta = v.get<double>();
      } else if (key == "nl") {
        if (v.is_null()) {
          cfg.n_loop.reset();
        } else {
          cfg.n_loop = v.get<int>();
        }
      } else if (key == "out") {
        cfg.out = v.get<std::string>();
      } else if (key == "format") {
        cfg.format = format_from_string(v.get<std::string>());
      } else if (key == "threads") {
        cfg.threads = v.get<unsigned>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

LinkMeasurer::LinkMeasurer(ModelParams p, MeshGrid mesh, Mode mode, NoiseModel noise,
                           std::int64_t shots, std::uint64_t master_seed, unsigned threads)
    : params_(p),
      mesh_(mesh),
      mode_(mode),
      noise_(mode == Mode::noisy_circuit ? noise : NoiseModel{}),
      shots_(shots),
      context_(derive_seed(master_seed,
                           {seed_tag(p.mu()), seed_tag(noise_.eps1), seed_tag(noise_.eps2)})),
      threads_(threads) {}

std::vector<LinkMeasurer::LinkKey> LinkMeasurer::keys_for(LinkSet links) const {
  std::vector<LinkKey> keys;
  for (int j = 0; j < mesh_.n_ky(); ++j) {
    for (int i = 0; i < mesh_.n_kx(); ++i) {
      switch (links) {
        case LinkSet::chern:
          keys.push_back({i, j, Direction::x, Band::minus, Band::minus});
          keys.push_back({i, j, Direction::y, Band::minus, Band::minus});
          break;
        case LinkSet::zak: keys.push_back({i, j, Direction::x, Band::minus, Band::minus}); break;
        case LinkSet::transport:
          for (auto a : {Band::plus, Band::minus}) {
            for (auto b : {Band::plus, Band::minus}) keys.push_back({i, j, Direction::x, a, b});
          }
          break;
      }
    }
  }
  return keys;
}

const std::vector<cplx>& LinkMeasurer::expectations_for(LinkSet links) {
  auto& slot = cache_[static_cast<int>(links)];
  if (slot) return *slot;
  const auto keys = keys_for(links);
  std::vector<cplx> values(keys.size());
  parallel_for(keys.size(), threads_, [&](std::size_t n) {
    const LinkKey& key = keys[n];
    const MomentumPoint k = mesh_.point(key.i, key.j);
    const MomentumPoint k2 = key.d == Direction::x ? mesh_.point(key.i + 1, key.j)
                                                   : mesh_.point(key.i, key.j + 1);
    values[n] = mode_ == Mode::exact_oracle
                    ? exact_overlap(k, k2, key.bra, key.ket, params_)
                    : overlap_expectation(k, k2, key.bra, key.ket, params_, noise_);
  });
  slot = std::move(values);
  return *slot;
}

OverlapField LinkMeasurer::measure(LinkSet links, int trial) {
  const auto& z = expectations_for(links);
  const auto keys = keys_for(links);
  std::vector<cplx> values(z);
  if (mode_ == Mode::noisy_circuit) {
    parallel_for(keys.size(), threads_, [&](std::size_t n) {
      const LinkKey& key = keys[n];
      const std::uint64_t seed = derive_seed(
          context_, {static_cast<std::uint64_t>(key.i), static_cast<std::uint64_t>(key.j),
                     static_cast<std::uint64_t>(key.d), static_cast<std::uint64_t>(key.bra),
                     static_cast<std::uint64_t>(key.ket), static_cast<std::uint64_t>(trial)});
      values[n] = sample_overlap(z[n], ShotPlan{shots_, seed});
    });
  }
  OverlapField field(mesh_);
  for (std::size_t n = 0; n < keys.size(); ++n) {
    field.set(keys[n].i, keys[n].j, keys[n].d, keys[n].bra, keys[n].ket, values[n]);
  }
  return field;
}

// ---------------------------------------------------------------------------

int reference_chern(double mu, const MeshGrid& mesh) {
  return chern(exact_overlap_field(mesh, ModelParams(mu), LinkSet::chern)).C;
}

std::vector<ChernTrial> chern_trials(const ExperimentConfig& cfg, double mu,
                                     const NoiseModel& noise, Mode mode) {
  LinkMeasurer measurer(ModelParams(mu), cfg.mesh(Command::chern), mode, noise, cfg.shots,
                        cfg.seed, cfg.threads);
  std::vector<ChernTrial> out;
  for (int t = 0; t < cfg.trials; ++t) {
    ChernTrial trial{mu, t, std::nullopt, {}};
    try {
      trial.result = chern(measurer.measure(LinkSet::chern, t));
    } catch (const NotQuantized& e) {
      trial.error = e.what();
    } catch (const DegenerateLink& e) {
      trial.error = e.what();
    }
    out.push_back(std::move(trial));
  }
  return out;
}

namespace {

std::string trial_note(double mu, int trial, const std::string& what) {
  return "mu=" + format_double(mu) + " trial=" + std::to_string(trial) + ": " + what;
}

} // namespace

CommandOutput cmd_chern(const ExperimentConfig& cfg) {
  CommandOutput out{Table({"mu", "trial", "C", "admissible", "residual"}), 0, {}};
  std::size_t failed = 0, total = 0;
  for (double mu : cfg.mu_list) {
    for (const auto& t : chern_trials(cfg, mu, cfg.noise(), cfg.mode)) {
      ++total;
      if (t.result) {
        out.table.add_row({mu, std::int64_t{t.trial}, std::int64_t{t.result->C},
                           t.result->admissible, t.result->residual});
      } else {
        ++failed;
        out.table.add_row({mu, std::int64_t{t.trial}, {}, {}, {}});
        out.messages.push_back(trial_note(mu, t.trial, t.error));
      }
    }
  }
  if (failed == total) out.exit_code = 2;
  return out;
}

CommandOutput cmd_mistake_ratio(const ExperimentConfig& cfg) {
  CommandOutput out{Table({"eps1", "mistakes", "trials", "ratio"}), 0, {}};
  const double mu = cfg.mu_list.front();
  const int exact = reference_chern(mu, cfg.mesh(Command::mistake_ratio));
  for (double e1 : cfg.sweep()) {
    std::int64_t mistakes = 0;
    for (const auto& t : chern_trials(cfg, mu, NoiseModel::coupled(e1), Mode::noisy_circuit)) {
      if (!t.result || t.result->C != exact) ++mistakes;
      if (!t.result) out.messages.push_back(trial_note(mu, t.trial, t.error));
    }
    out.table.add_row({e1, mistakes, std::int64_t{cfg.trials},
                       static_cast<double>(mistakes) / cfg.trials});
  }
  return out;
}

CommandOutput cmd_nfield(const ExperimentConfig& cfg) {
  CommandOutput out{Table({"trial", "i", "j", "n"}), 0, {}};
  const double mu = cfg.mu_list.front();
  const MeshGrid mesh = cfg.mesh(Command::nfield);
  int failed = 0;
  for (const auto& t : chern_trials(cfg, mu, cfg.noise(), cfg.mode)) {
    const std::int64_t trial = t.trial;
    if (!t.result) {
      ++failed;
      out.table.add_row({trial, std::string("sum"), {}, {}});
      out.messages.push_back(trial_note(mu, t.trial, t.error));
      continue;
    }
    std::int64_t sum = 0;
    for (int j = 0; j < mesh.n_ky(); ++j) {
      for (int i = 0; i < mesh.n_kx(); ++i) {
        const int n = t.result->n[mesh.index(i, j)];
        sum += n;
        out.table.add_row({trial, std::int64_t{i}, std::int64_t{j}, std::int64_t{n}});
      }
    }
    out.table.add_row({trial, std::string("sum"), {}, sum});
  }
  if (failed == cfg.trials) out.exit_code = 2;
  return out;
}

namespace {

using ProfileFn = std::function<std::vector<double>(const OverlapField&)>;

CommandOutput phase_profiles(const ExperimentConfig& cfg, Command cmd, LinkSet links,
                             const char* phase_column, const ProfileFn& profile) {
  CommandOutput out{Table({"ky", "trial", phase_column, "winding"}), 0, {}};
  const double mu = cfg.mu_list.front();
  const MeshGrid mesh = cfg.mesh(cmd);
  LinkMeasurer measurer(ModelParams(mu), mesh, cfg.mode, cfg.noise(), cfg.shots, cfg.seed,
                        cfg.threads);
  int failed = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    std::vector<double> phases;
    Cell winding;
    try {
      phases = profile(measurer.measure(links, t));
      winding = std::int64_t{phase_winding(phases)};
    } catch (const DegenerateLink& e) {
      ++failed;
      out.messages.push_back(trial_note(mu, t, e.what()));
    } catch (const AmbiguousWinding& e) {
      out.messages.push_back(trial_note(mu, t, e.what()));
    }
    for (int j = 0; j < mesh.n_ky(); ++j) {
      Cell phase;
      if (!phases.empty()) phase = phases[static_cast<std::size_t>(j)];
      out.table.add_row({mesh.ky(j), std::int64_t{t}, phase, winding});
    }
  }
  if (failed == cfg.trials) out.exit_code = 2;
  return out;
}

} // namespace

CommandOutput cmd_zak(const ExperimentConfig& cfg) {
  return phase_profiles(cfg, Command::zak, LinkSet::zak, "phi",
                        [](const OverlapField& f) { return zak_profile(f).phi; });
}

CommandOutput cmd_egp(const ExperimentConfig& cfg) {
  bool rescaled = false;
  const ModelParams p(cfg.mu_list.front());
  CommandOutput out = phase_profiles(cfg, Command::egp, LinkSet::transport, "phiE",
                                     [&](const OverlapField& f) {
                                       EgpProfile prof = egp_profile(f, p, cfg.beta);
                                       rescaled = rescaled || prof.rescaled;
                                       return prof.phiE;
                                     });
  if (rescaled) {
    out.messages.push_back("beta |E| exceeded the overflow threshold; link factors were rescaled");
  }
  return out;
}

CommandOutput run_command(Command cmd, const ExperimentConfig& cfg) {
  cfg.validate(cmd);
  switch (cmd) {
    case Command::chern: return cmd_chern(cfg);
    case Command::mistake_ratio: return cmd_mistake_ratio(cfg);
    case Command::nfield: return cmd_nfield(cfg);
    case Command::zak: return cmd_zak(cfg);
    case Command::egp: return cmd_egp(cfg);
  }
  throw ConfigError("unknown command");
}

void write_output(std::ostream& out, Command cmd, const ExperimentConfig& cfg,
                  const CommandOutput& output) {
  if (cfg.format == OutputFormat::csv) {
    output.table.write_csv(out);
    return;
  }
  const nlohmann::json meta = {
      {"command", to_string(cmd)}, {"config", cfg.to_json()}, {"version", kArtifactVersion}};
  out << output.table.to_json(meta).dump(2) << '\n';
}

} // namespace nisqtopo
