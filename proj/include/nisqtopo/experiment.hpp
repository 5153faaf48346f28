#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nisqtopo/egp.hpp"
#include "nisqtopo/invariants.hpp"
#include "nisqtopo/sim.hpp"
#include "nisqtopo/table.hpp"

namespace nisqtopo {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class Mode { exact_oracle, noise_free_circuit, noisy_circuit };
enum class OutputFormat { csv, json };
enum class Command { chern, mistake_ratio, nfield, zak, egp };

const char* to_string(Mode m);
const char* to_string(OutputFormat f);
const char* to_string(Command c);
Mode mode_from_string(const std::string& s);
OutputFormat format_from_string(const std::string& s);
Command command_from_string(const std::string& s);

struct ExperimentConfig {
  std::vector<double> mu_list;
  int n_kx = 8;
  int n_ky = 8;
  std::int64_t shots = 5120;
  double eps1 = 0.0;
  /// Defaults to 10 eps1 when unset.
  std::optional<double> eps2;
  /// eps1 values swept by mistake-ratio; defaults to 0.005..0.015 step 0.001.
  std::vector<double> eps1_list;
  int trials = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::exact_oracle;
  double beta = 2.1;
  /// Loop grid count for zak/egp; overrides n_kx when set.
  std::optional<int> n_loop;
  std::string out;
  OutputFormat format = OutputFormat::csv;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  double eps2_value() const { return eps2 ? *eps2 : 10.0 * eps1; }
  NoiseModel noise() const;
  MeshGrid mesh(Command cmd) const;
  std::vector<double> sweep() const;

  /// Throws ConfigError.
  void validate(Command cmd) const;

  nlohmann::json to_json() const;
};

/// Fields left unset in `j` keep their current value. Throws ConfigError.
void apply_config_json(ExperimentConfig& cfg, const nlohmann::json& j);

/// Produces overlap fields for one (mu, noise) setting. Noisy circuit
/// expectations are computed once per link and shared by every trial; each
/// trial then draws its own shots from seeds derived from
/// (master seed, context, i, j, direction, band pair, trial).
class LinkMeasurer {
public:
  LinkMeasurer(ModelParams p, MeshGrid mesh, Mode mode, NoiseModel noise, std::int64_t shots,
               std::uint64_t master_seed, unsigned threads = 0);

  OverlapField measure(LinkSet links, int trial);

  const ModelParams& params() const { return params_; }
  const MeshGrid& mesh() const { return mesh_; }

private:
  struct LinkKey {
    int i, j;
    Direction d;
    Band bra, ket;
  };
  std::vector<LinkKey> keys_for(LinkSet links) const;
  const std::vector<cplx>& expectations_for(LinkSet links);

  ModelParams params_;
  MeshGrid mesh_;
  Mode mode_;
  NoiseModel noise_;
  std::int64_t shots_;
  std::uint64_t context_;
  unsigned threads_;
  std::optional<std::vector<cplx>> cache_[3];
};

/// Runs fn(0..n-1) on up to `threads` workers. Each index runs exactly once.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct ChernTrial {
  double mu = 0.0;
  int trial = 0;
  std::optional<ChernResult> result;
  std::string error;
};

/// Exact-oracle Chern number used as the reference for mistakes.
int reference_chern(double mu, const MeshGrid& mesh);

std::vector<ChernTrial> chern_trials(const ExperimentConfig& cfg, double mu, const NoiseModel& noise,
                                     Mode mode);

struct CommandOutput {
  Table table;
  int exit_code = 0;
  /// Diagnostics for stderr (failed trials, rescaling notices).
  std::vector<std::string> messages;
};

CommandOutput cmd_chern(const ExperimentConfig& cfg);
CommandOutput cmd_mistake_ratio(const ExperimentConfig& cfg);
CommandOutput cmd_nfield(const ExperimentConfig& cfg);
CommandOutput cmd_zak(const ExperimentConfig& cfg);
CommandOutput cmd_egp(const ExperimentConfig& cfg);

/// Validates, dispatches and returns the output. Throws ConfigError.
CommandOutput run_command(Command cmd, const ExperimentConfig& cfg);

/// Writes the table in the configured format.
void write_output(std::ostream& out, Command cmd, const ExperimentConfig& cfg,
                  const CommandOutput& output);

} // namespace nisqtopo
