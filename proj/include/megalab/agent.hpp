#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "megalab/replay.hpp"
#include "megalab/rng.hpp"

namespace megalab {

/// Goal-conditioned state-action value table Q(s, a, g). Values start at 0
/// and stay in [-1/(1-gamma), 0] under the clipped Bellman update.
class GoalTable {
 public:
  GoalTable(int num_states, int num_actions, int num_goals,
            double gamma = 0.98, double learning_rate = 0.5);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int num_goals() const { return num_goals_; }
  double gamma() const { return gamma_; }
  double learning_rate() const { return learning_rate_; }
  double clip_lower() const { return clip_lower_; }

  double value(int s, int a, int g) const { return values_[idx(s, a, g)]; }
  void set_value(int s, int a, int g, double v) { values_[idx(s, a, g)] = v; }

  double max_value(int s, int g) const {
    const double* row = &values_[idx(s, 0, g)];
    double best = row[0];
    for (int a = 1; a < num_actions_; ++a) best = std::max(best, row[a]);
    return best;
  }

  /// Greedy action; ties break to the lowest action id.
  int greedy_action(int s, int g) const {
    const double* row = &values_[idx(s, 0, g)];
    int best = 0;
    for (int a = 1; a < num_actions_; ++a)
      if (row[a] > row[best]) best = a;
    return best;
  }

  /// One Q-learning sweep over the batch. Targets are clipped to
  /// [-1/(1-gamma), 0]; no terminal cutoff on success (success must be
  /// maintained, so the update rule is uniform).
  void optimize_batch(std::span<const Transition> batch);

 private:
  std::size_t idx(int s, int a, int g) const {
    return (static_cast<std::size_t>(s) * num_goals_ +
            static_cast<std::size_t>(g)) *
               num_actions_ +
           static_cast<std::size_t>(a);
  }

  int num_states_, num_actions_, num_goals_;
  double gamma_, learning_rate_, clip_lower_;
  std::vector<double> values_;
};

/// Epsilon schedule with the go-exploration bonus: each in-episode
/// achievement of the behavioural goal raises epsilon by go_bonus, capped
/// at 1 and reset at episode start.
struct ExplorationState {
  double base_epsilon = 0.1;
  double go_bonus = 0.1;
  int achievements_this_episode = 0;

  double current_epsilon() const {
    return std::min(1.0,
                    base_epsilon + go_bonus * achievements_this_episode);
  }
  void reset_episode() { achievements_this_episode = 0; }
};

/// Epsilon-greedy action: uniform random with probability current_epsilon,
/// otherwise greedy with lowest-id tie-breaking.
int act(const GoalTable& table, int state, int goal,
        const ExplorationState& exploration, Rng& rng);

/// Bumps the achievement counter when achieved_now is set.
ExplorationState register_achievement(ExplorationState exploration,
                                      bool achieved_now);

}  // namespace megalab
