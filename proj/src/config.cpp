#include "megalab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "megalab/select.hpp"

namespace megalab {

namespace {

long parse_long(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" +
                                value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config: bad integer for " + key + ": '" +
                                value + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" +
                                value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config: bad number for " + key + ": '" +
                                value + "'");
  return v;
}

std::array<int, 5> parse_ratios(const std::string& value) {
  std::array<int, 5> out{};
  std::string token;
  std::istringstream in(value);
  int i = 0;
  while (std::getline(in, token, ',')) {
    if (i >= 5) throw std::invalid_argument("config: rfaab needs 5 ratios");
    out[static_cast<std::size_t>(i++)] =
        static_cast<int>(parse_long("rfaab", token));
  }
  if (i != 5) throw std::invalid_argument("config: rfaab needs 5 ratios");
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "env") env = value;
  else if (key == "strategy") strategy = value;
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "total_steps") total_steps = parse_long(key, value);
  else if (key == "episodes_per_eval") episodes_per_eval = static_cast<int>(parse_long(key, value));
  else if (key == "eval_episodes") eval_episodes = static_cast<int>(parse_long(key, value));
  else if (key == "batch_size") batch_size = static_cast<int>(parse_long(key, value));
  else if (key == "learning_rate") learning_rate = parse_double(key, value);
  else if (key == "gamma") gamma = parse_double(key, value);
  else if (key == "epsilon") epsilon = parse_double(key, value);
  else if (key == "go_bonus") go_bonus = parse_double(key, value);
  else if (key == "rfaab") rfaab = parse_ratios(value);
  else if (key == "warmup_random_steps") warmup_random_steps = parse_long(key, value);
  else if (key == "warmup_relabel_steps") warmup_relabel_steps = parse_long(key, value);
  else if (key == "kde_bandwidth") kde_bandwidth = parse_double(key, value);
  else if (key == "kde_kernel") kde_kernel = value;
  else if (key == "num_candidates") num_candidates = static_cast<int>(parse_long(key, value));
  else if (key == "b") omega_b = parse_double(key, value);
  else if (key == "kl_samples") kl_samples = static_cast<int>(parse_long(key, value));
  else if (key == "entropy_samples") entropy_samples = static_cast<int>(parse_long(key, value));
  else if (key == "max_buffer") max_buffer = parse_long(key, value);
  else if (key == "out") out_path = value;
  else if (key == "dump_achieved") dump_achieved = value;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  if (!parse_strategy(strategy))
    throw std::invalid_argument("config: unknown strategy '" + strategy + "'");
  if (env.empty()) throw std::invalid_argument("config: empty env");
  if (total_steps < 0) throw std::invalid_argument("config: negative total_steps");
  if (episodes_per_eval <= 0) throw std::invalid_argument("config: episodes_per_eval must be positive");
  if (eval_episodes < 0) throw std::invalid_argument("config: negative eval_episodes");
  if (batch_size <= 0) throw std::invalid_argument("config: batch_size must be positive");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw std::invalid_argument("config: learning_rate outside (0,1]");
  if (gamma != 0.0 && !(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("config: gamma outside (0,1)");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("config: epsilon outside [0,1]");
  if (go_bonus < 0.0) throw std::invalid_argument("config: negative go_bonus");
  int ratio_sum = 0;
  for (int r : rfaab) {
    if (r < 0) throw std::invalid_argument("config: negative rfaab ratio");
    ratio_sum += r;
  }
  if (ratio_sum == 0) throw std::invalid_argument("config: all rfaab ratios zero");
  if (warmup_random_steps < 0 || warmup_relabel_steps < 0)
    throw std::invalid_argument("config: negative warmup");
  if (!(kde_bandwidth > 0.0))
    throw std::invalid_argument("config: kde_bandwidth must be positive");
  if (kde_kernel != "gaussian" && kde_kernel != "exponential")
    throw std::invalid_argument("config: kde_kernel must be gaussian or exponential");
  if (num_candidates < 1)
    throw std::invalid_argument("config: num_candidates must be >= 1");
  if (kl_samples <= 0) throw std::invalid_argument("config: kl_samples must be positive");
  if (entropy_samples <= 0)
    throw std::invalid_argument("config: entropy_samples must be positive");
  if (max_buffer < 0) throw std::invalid_argument("config: negative max_buffer");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno += 1;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  for (const auto& [key, value] : read_config_file(path)) cfg.set(key, value);
}

}  // namespace megalab
