#include "megalab/agent.hpp"

#include <stdexcept>

namespace megalab {

GoalTable::GoalTable(int num_states, int num_actions, int num_goals,
                     double gamma, double learning_rate)
    : num_states_(num_states),
      num_actions_(num_actions),
      num_goals_(num_goals),
      gamma_(gamma),
      learning_rate_(learning_rate),
      clip_lower_(-1.0 / (1.0 - gamma)) {
  if (num_states <= 0 || num_actions <= 0 || num_goals <= 0)
    throw std::invalid_argument("GoalTable: nonpositive dimension");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("GoalTable: gamma outside (0,1)");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw std::invalid_argument("GoalTable: learning rate outside (0,1]");
  values_.assign(static_cast<std::size_t>(num_states) * num_actions *
                     num_goals,
                 0.0);
}

void GoalTable::optimize_batch(std::span<const Transition> batch) {
  for (const Transition& t : batch) {
    double target = t.reward + gamma_ * max_value(t.next_state, t.goal);
    target = std::clamp(target, clip_lower_, 0.0);
    double& q = values_[idx(t.state, t.action, t.goal)];
    q += learning_rate_ * (target - q);
  }
}

int act(const GoalTable& table, int state, int goal,
        const ExplorationState& exploration, Rng& rng) {
  if (rng.uniform() < exploration.current_epsilon())
    return static_cast<int>(
        rng.index(static_cast<std::size_t>(table.num_actions())));
  return table.greedy_action(state, goal);
}

ExplorationState register_achievement(ExplorationState exploration,
                                      bool achieved_now) {
  if (achieved_now) exploration.achievements_this_episode += 1;
  return exploration;
}

}  // namespace megalab
