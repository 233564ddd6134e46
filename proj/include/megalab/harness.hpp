#pragma once

#include <functional>
#include <vector>

#include "megalab/agent.hpp"
#include "megalab/config.hpp"
#include "megalab/grid_maze.hpp"
#include "megalab/metrics.hpp"

namespace megalab {

/// Callback receiving each MetricRecord as it is produced.
using MetricSink = std::function<void(const MetricRecord&)>;

/// Result of a full training run: the emitted metric stream plus the final
/// learner (kept for inspection in tests).
struct TrainResult {
  std::vector<MetricRecord> records;
  GoalTable table;
};

/// Algorithm: alternate rollout and per-step optimization. Each episode
/// selects a behavioural goal per the configured strategy, rolls it out
/// with epsilon-greedy actions plus the go-exploration bonus, stores and
/// relabels experience, and updates the achievability cutoff from
/// first-visit intrinsic success. Every episodes_per_eval episodes a
/// MetricRecord is emitted with greedy test success on the desired goal
/// distribution, buffer entropy, OMEGA's alpha (when applicable), interval
/// intrinsic success, and the current cutoff.
///
/// (config, seed) fully determines every emitted byte. Throws
/// std::invalid_argument for invalid configs.
TrainResult train(const RunConfig& config, const MetricSink& sink = {});

/// Fraction of n_episodes greedy (epsilon = 0) episodes achieving
/// first-visit success on goals drawn from the desired distribution.
/// n_episodes == 0 returns 0.0 with a warning on stderr.
double evaluate(const GoalTable& table, const GridMaze& env, int n_episodes,
                Rng& rng);

}  // namespace megalab
