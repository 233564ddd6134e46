#include "megalab/replay.hpp"

#include <stdexcept>

namespace megalab {

double compute_reward(const GoalVec& achieved, const GoalVec& goal,
                      double tolerance) {
  return goal_distance(achieved, goal) < tolerance ? 0.0 : -1.0;
}

void AchievedGoalBuffer::push(const GoalVec& coords, int id) {
  if (static_cast<int>(coords.size()) != dim_)
    throw std::invalid_argument("AchievedGoalBuffer: dimension mismatch");
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  ids_.push_back(id);
  if (max_size_ > 0 && ids_.size() > max_size_) {
    const std::size_t drop = ids_.size() - max_size_;
    ids_.erase(ids_.begin(), ids_.begin() + static_cast<std::ptrdiff_t>(drop));
    coords_.erase(coords_.begin(),
                  coords_.begin() + static_cast<std::ptrdiff_t>(drop * dim_));
  }
}

GoalVec AchievedGoalBuffer::coords_at(std::size_t i) const {
  return GoalVec(coords_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                 coords_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
}

int TransitionStore::episode_achieved(int episode_id, int step) const {
  return episode_ags_[static_cast<std::size_t>(episode_id - first_episode_)]
                     [static_cast<std::size_t>(step)];
}

int TransitionStore::episode_length(int episode_id) const {
  return static_cast<int>(
      episode_ags_[static_cast<std::size_t>(episode_id - first_episode_)]
          .size());
}

std::vector<Transition> TransitionStore::sample(std::size_t n, Rng& rng) const {
  if (transitions_.empty())
    throw std::logic_error("TransitionStore: sampling from empty store");
  std::vector<Transition> batch;
  batch.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    batch.push_back(transitions_[rng.index(transitions_.size())]);
  return batch;
}

void TransitionStore::append_episode(std::span<const Transition> episode) {
  std::vector<int> ags;
  ags.reserve(episode.size());
  for (const Transition& t : episode) {
    transitions_.push_back(t);
    ags.push_back(t.achieved_goal);
  }
  episode_ags_.push_back(std::move(ags));

  if (max_transitions_ > 0 && transitions_.size() > max_transitions_) {
    // Evict whole episodes from the front until back under the cap.
    std::size_t drop_transitions = 0;
    std::size_t drop_episodes = 0;
    while (transitions_.size() - drop_transitions > max_transitions_ &&
           drop_episodes + 1 < episode_ags_.size()) {
      drop_transitions += episode_ags_[drop_episodes].size();
      drop_episodes += 1;
    }
    transitions_.erase(
        transitions_.begin(),
        transitions_.begin() + static_cast<std::ptrdiff_t>(drop_transitions));
    episode_ags_.erase(
        episode_ags_.begin(),
        episode_ags_.begin() + static_cast<std::ptrdiff_t>(drop_episodes));
    first_episode_ += static_cast<int>(drop_episodes);
  }
}

std::vector<Transition> relabel_future(const TransitionStore& store,
                                       std::vector<Transition> batch,
                                       const RewardFn& reward, Rng& rng) {
  for (Transition& t : batch) {
    const int len = store.episode_length(t.episode_id);
    // Uniform index in [t.step_index, len): includes the transition's own
    // next-state achieved goal, so hindsight successes occur at the final
    // step with probability 1.
    const int span = len - t.step_index;
    const int j = t.step_index + static_cast<int>(rng.index(
                                     static_cast<std::size_t>(span)));
    t.goal = store.episode_achieved(t.episode_id, j);
    t.reward = reward(t.achieved_goal, t.goal);
  }
  return batch;
}

std::vector<Transition> relabel_rfaab(const TransitionStore& store,
                                      std::vector<Transition> batch,
                                      const std::array<int, 5>& ratios,
                                      const GoalBuffers& buffers,
                                      const RewardFn& reward, Rng& rng) {
  double total = 0.0;
  for (int r : ratios) {
    if (r < 0) throw std::invalid_argument("relabel_rfaab: negative ratio");
    total += r;
  }
  if (total <= 0.0)
    throw std::invalid_argument("relabel_rfaab: all ratios zero");
  double cum[5];
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) {
    acc += ratios[static_cast<std::size_t>(i)] / total;
    cum[i] = acc;
  }

  for (Transition& t : batch) {
    const double u = rng.uniform();
    int category = 4;
    for (int i = 0; i < 5; ++i) {
      if (u < cum[i]) {
        category = i;
        break;
      }
    }
    switch (category) {
      case 0:  // real: keep the stored goal
        break;
      case 1: {  // future
        const int len = store.episode_length(t.episode_id);
        const int span = len - t.step_index;
        const int j = t.step_index + static_cast<int>(rng.index(
                                         static_cast<std::size_t>(span)));
        t.goal = store.episode_achieved(t.episode_id, j);
        break;
      }
      case 2:  // actual
        if (!buffers.actual.empty())
          t.goal = buffers.actual[rng.index(buffers.actual.size())];
        break;
      case 3:  // achieved
        if (!buffers.achieved.empty())
          t.goal = buffers.achieved.id_at(
              buffers.achieved.sample_index(rng));
        break;
      case 4:  // behavioural
        if (!buffers.behavioural.empty())
          t.goal = buffers.behavioural[rng.index(buffers.behavioural.size())];
        break;
    }
    t.reward = reward(t.achieved_goal, t.goal);
  }
  return batch;
}

void store_episode(std::span<const Transition> episode,
                   const std::vector<GoalVec>& achieved_coords,
                   int behavioural_goal, int desired_goal, GoalBuffers& buffers,
                   TransitionStore& store) {
  if (achieved_coords.size() != episode.size())
    throw std::invalid_argument(
        "store_episode: one achieved goal per transition required");
  store.append_episode(episode);
  for (std::size_t i = 0; i < episode.size(); ++i)
    buffers.achieved.push(achieved_coords[i], episode[i].achieved_goal);
  buffers.behavioural.push_back(behavioural_goal);
  buffers.actual.push_back(desired_goal);
}

}  // namespace megalab
