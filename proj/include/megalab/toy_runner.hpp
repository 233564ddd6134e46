#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "megalab/metrics.hpp"

namespace megalab {

/// Configuration of the discrete goal-chain experiment.
struct ToyConfig {
  int n = 50;
  int iterations = 2000;
  int trials = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> policies = {"achieved", "diverse", "mega",
                                       "eg-oracle"};
};

/// Per-policy trial-averaged curves, indexed by iteration (0..iterations;
/// iteration 0 is the initial singleton buffer).
struct ToyCurve {
  std::string policy;
  std::vector<double> mean_entropy;
  std::vector<double> std_entropy;
  std::vector<double> mean_support;
  std::vector<double> std_support;
};

/// Runs every (policy, trial) pair: the buffer starts at {n}; each
/// iteration the policy picks a behavioural goal from the buffer per its
/// rule (achieved: proportional to mass; diverse: uniform on the support;
/// mega: uniform over the minimum-mass goals; eg-oracle: maximum expected
/// entropy gain under the exact kernel), one achieved goal is sampled from
/// the kernel and appended, and exact buffer entropy and support size are
/// recorded. Curves are averaged over trials with the population standard
/// deviation. Trials run in parallel; results do not depend on the thread
/// count.
std::vector<ToyCurve> run_toy(const ToyConfig& config);

/// Writes the curves through the toy CSV sink.
void write_toy_csv(const std::vector<ToyCurve>& curves, ToyWriter& writer);

}  // namespace megalab
