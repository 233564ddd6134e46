#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "megalab/goal.hpp"
#include "megalab/rng.hpp"

namespace megalab {

/// Sparse reward: 0 when the achieved goal is within tolerance of the goal
/// (strict inequality under the Euclidean metric), -1 otherwise.
double compute_reward(const GoalVec& achieved, const GoalVec& goal,
                      double tolerance);

/// One environment step. All ids are environment-assigned. `goal` is the
/// behavioural goal at store time and is the field relabeling replaces;
/// `achieved_goal` is the achieved goal of next_state.
struct Transition {
  int state = 0;
  int action = 0;
  int next_state = 0;
  int goal = 0;
  int achieved_goal = 0;
  int episode_id = 0;
  int step_index = 0;
  double reward = -1.0;
};

/// Reward recomputation hook used by relabeling: maps (achieved goal id,
/// goal id) to the sparse reward. Both shipped environments use exact cell
/// match, so id equality is the metric.
using RewardFn = std::function<double(int achieved, int goal)>;

/// Append-only store of achieved goals: the empirical p_ag. Keeps raw
/// coordinates (for density fitting) alongside ids (for relabeling and the
/// tabular agent). An optional max size evicts oldest entries.
class AchievedGoalBuffer {
 public:
  explicit AchievedGoalBuffer(int dim, std::size_t max_size = 0)
      : dim_(dim), max_size_(max_size) {}

  void push(const GoalVec& coords, int id);
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  int dim() const { return dim_; }

  int id_at(std::size_t i) const { return ids_[i]; }
  GoalVec coords_at(std::size_t i) const;

  /// Flat row-major view of all stored coordinates (size() * dim doubles).
  std::span<const double> flat() const { return coords_; }

  /// One uniform draw (index) from the buffer.
  std::size_t sample_index(Rng& rng) const { return rng.index(size()); }

 private:
  int dim_;
  std::size_t max_size_;
  std::vector<double> coords_;
  std::vector<int> ids_;
};

/// The three goal populations rfaab relabeling draws from, plus the
/// achieved-goal store. behavioural and actual grow by one entry per
/// episode; achieved grows by one entry per environment step.
struct GoalBuffers {
  AchievedGoalBuffer achieved;
  std::vector<int> actual;       // desired goals announced at episode starts
  std::vector<int> behavioural;  // goals pursued during training

  explicit GoalBuffers(int dim, std::size_t max_achieved = 0)
      : achieved(dim, max_achieved) {}
};

/// Flat transition storage with per-episode achieved-goal sequences for
/// future relabeling. Single writer, single reader, interleaved on one
/// control thread.
class TransitionStore {
 public:
  explicit TransitionStore(std::size_t max_transitions = 0)
      : max_transitions_(max_transitions) {}

  std::size_t size() const { return transitions_.size(); }
  bool empty() const { return transitions_.empty(); }
  const Transition& at(std::size_t i) const { return transitions_[i]; }

  /// Achieved goal of step j within episode ep (j indexes the stored
  /// transitions of that episode).
  int episode_achieved(int episode_id, int step) const;
  int episode_length(int episode_id) const;

  /// Uniform sample of n transitions, with replacement.
  std::vector<Transition> sample(std::size_t n, Rng& rng) const;

  void append_episode(std::span<const Transition> episode);

 private:
  std::size_t max_transitions_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<int>> episode_ags_;  // indexed by episode_id
  int first_episode_ = 0;                      // ids below this were evicted
};

/// HER "future": each transition's goal becomes the achieved goal of a
/// uniformly chosen step in [t, T) of its own episode; rewards recomputed.
std::vector<Transition> relabel_future(const TransitionStore& store,
                                       std::vector<Transition> batch,
                                       const RewardFn& reward, Rng& rng);

/// rfaab: each transition is assigned a category by a multinomial draw with
/// probabilities proportional to `ratios` (Real, Future, Actual, Achieved,
/// Behavioural); Real keeps the stored goal, the others redraw it from the
/// corresponding population. Rewards are recomputed for every transition.
/// A drawn category with an empty donor buffer falls back to Real.
std::vector<Transition> relabel_rfaab(const TransitionStore& store,
                                      std::vector<Transition> batch,
                                      const std::array<int, 5>& ratios,
                                      const GoalBuffers& buffers,
                                      const RewardFn& reward, Rng& rng);

/// Stores a completed episode: all transitions, every per-step achieved
/// goal (coordinates + id), and the episode's behavioural and desired goal.
void store_episode(std::span<const Transition> episode,
                   const std::vector<GoalVec>& achieved_coords,
                   int behavioural_goal, int desired_goal, GoalBuffers& buffers,
                   TransitionStore& store);

}  // namespace megalab
