#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "megalab/config.hpp"
#include "megalab/harness.hpp"
#include "megalab/metrics.hpp"
#include "megalab/toy_runner.hpp"

namespace {

using namespace megalab;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

int run_train(const std::string& config_path, const RunConfig& overrides,
              const std::vector<std::string>& present) {
  RunConfig cfg;
  if (!config_path.empty()) apply_config_file(cfg, config_path);
  // CLI flags beat the file.
  for (const std::string& key : present) {
    if (key == "env") cfg.env = overrides.env;
    else if (key == "strategy") cfg.strategy = overrides.strategy;
    else if (key == "seed") cfg.seed = overrides.seed;
    else if (key == "steps") cfg.total_steps = overrides.total_steps;
    else if (key == "out") cfg.out_path = overrides.out_path;
  }
  cfg.validate();
  if (cfg.out_path.empty())
    throw std::invalid_argument("train: no output path (--out or out=...)");

  MetricWriter writer(cfg.out_path);
  train(cfg, [&](const MetricRecord& r) { writer.write(r); });
  return 0;
}

int run_toy_cmd(int n, int trials, int iterations, std::uint64_t seed,
                const std::string& policies, const std::string& out) {
  ToyConfig cfg;
  cfg.n = n;
  cfg.trials = trials;
  cfg.iterations = iterations;
  cfg.seed = seed;
  if (!policies.empty()) cfg.policies = split_csv(policies);
  if (out.empty()) throw std::invalid_argument("toy: no output path (--out)");

  const std::vector<ToyCurve> curves = run_toy(cfg);
  ToyWriter writer(out);
  write_toy_csv(curves, writer);
  return 0;
}

int run_sweep(const std::string& config_path) {
  auto kv = read_config_file(config_path);
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    std::string v;
    if (it != kv.end()) {
      v = it->second;
      kv.erase(it);
    }
    return v;
  };
  const std::vector<std::string> strategies = split_csv(take("strategies"));
  const std::vector<std::string> seeds = split_csv(take("seeds"));
  const std::string out_dir = take("out_dir");
  if (strategies.empty() || seeds.empty())
    throw std::invalid_argument("sweep: need strategies= and seeds=");
  if (out_dir.empty()) throw std::invalid_argument("sweep: need out_dir=");

  RunConfig base;
  for (const auto& [key, value] : kv) base.set(key, value);

  struct Job {
    RunConfig cfg;
    std::string path;
  };
  std::vector<Job> jobs;
  for (const std::string& strategy : strategies) {
    for (const std::string& seed : seeds) {
      RunConfig cfg = base;
      cfg.set("strategy", strategy);
      cfg.set("seed", seed);
      cfg.validate();
      jobs.push_back(
          {cfg, out_dir + "/" + cfg.env + "_" + strategy + "_seed" + seed +
                    ".csv"});
    }
  }

  // Runs share nothing mutable; each writes its own sink.
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      MetricWriter writer(jobs[i].path);
      train(jobs[i].cfg, [&](const MetricRecord& r) { writer.write(r); });
#pragma omp critical
      std::printf("sweep: finished %s\n", jobs[i].path.c_str());
    } catch (const std::exception& e) {
#pragma omp critical
      {
        std::fprintf(stderr, "sweep: %s failed: %s\n", jobs[i].path.c_str(),
                     e.what());
        failed = true;
      }
    }
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-goal exploration lab: maximum-entropy goal selection "
               "on discrete mazes and a goal-chain testbed"};
  app.require_subcommand(1);

  // train
  auto* train_cmd = app.add_subcommand("train", "Run one training session");
  RunConfig overrides;
  std::string config_path;
  long steps_flag = 0;
  train_cmd->add_option("--env", overrides.env, "Environment id or layout path");
  train_cmd->add_option("--strategy", overrides.strategy,
                        "desired|achieved|diverse|minq|goaldisc|mega|omega");
  train_cmd->add_option("--seed", overrides.seed, "Run seed");
  train_cmd->add_option("--steps", steps_flag, "Total environment steps");
  train_cmd->add_option("--out", overrides.out_path, "Metric CSV path");
  train_cmd->add_option("--config", config_path, "Flat key=value config file");

  // toy
  auto* toy_cmd = app.add_subcommand("toy", "Run the goal-chain experiment");
  int toy_n = 50, toy_trials = 50, toy_iterations = 2000;
  std::uint64_t toy_seed = 0;
  std::string toy_policies, toy_out;
  toy_cmd->add_option("--n", toy_n, "Chain parameter (universe 2n+1)");
  toy_cmd->add_option("--trials", toy_trials, "Trials to average");
  toy_cmd->add_option("--iterations", toy_iterations, "Iterations per trial");
  toy_cmd->add_option("--seed", toy_seed, "Experiment seed");
  toy_cmd->add_option("--policies", toy_policies,
                      "Comma list of achieved,diverse,mega,eg-oracle");
  toy_cmd->add_option("--out", toy_out, "Curve CSV path");

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run a strategy x seed grid from a config");
  std::string sweep_config;
  sweep_cmd->add_option("--config", sweep_config, "Sweep config file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      overrides.total_steps = steps_flag;
      std::vector<std::string> present;
      for (const char* key : {"env", "strategy", "seed", "steps", "out"}) {
        if (train_cmd->count(std::string("--") + key) > 0)
          present.push_back(key);
      }
      return run_train(config_path, overrides, present);
    }
    if (toy_cmd->parsed()) {
      return run_toy_cmd(toy_n, toy_trials, toy_iterations, toy_seed,
                         toy_policies, toy_out);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_config);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
