#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace megalab {

/// One training run's configuration. Zero-valued total_steps / gamma /
/// horizon resolve to the environment's recommended values when the run
/// starts.
struct RunConfig {
  std::string env = "spiral10";
  std::string strategy = "mega";
  std::uint64_t seed = 0;
  long total_steps = 0;
  int episodes_per_eval = 50;
  int eval_episodes = 50;
  int batch_size = 256;
  double learning_rate = 0.5;
  double gamma = 0.0;
  double epsilon = 0.1;
  double go_bonus = 0.1;
  std::array<int, 5> rfaab = {1, 4, 3, 1, 1};
  long warmup_random_steps = 1000;
  long warmup_relabel_steps = 5000;
  double kde_bandwidth = 0.1;
  std::string kde_kernel = "gaussian";
  int num_candidates = 100;
  double omega_b = -3.0;
  int kl_samples = 50;
  int entropy_samples = 500;
  long max_buffer = 0;  // 0 = unbounded
  std::string out_path;
  std::string dump_achieved;

  /// Applies one key=value assignment. Throws std::invalid_argument on an
  /// unknown key or unparsable value.
  void set(const std::string& key, const std::string& value);

  /// Throws std::invalid_argument when any field is out of contract.
  void validate() const;
};

/// Parses a flat key=value config file ('#' starts a comment; blank lines
/// ignored). Returns assignments in file order.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Loads a config file into cfg (defaults already applied by the caller).
void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace megalab
