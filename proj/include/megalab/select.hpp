#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "megalab/density.hpp"
#include "megalab/entropy_math.hpp"
#include "megalab/replay.hpp"
#include "megalab/rng.hpp"

namespace megalab {

/// Behavioural-goal selection strategies. The names are the CLI-facing
/// strings (see strategy_name / parse_strategy).
enum class Strategy {
  kDesired,
  kAchieved,
  kDiverse,
  kMinQ,
  kGoalDisc,
  kMega,
  kOmega,
  kEgOracle,
};

const char* strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& name);

/// Dynamic achievability threshold on candidate Q-values. The window holds
/// the intrinsic-success flags of the last 10 training episodes.
struct CutoffState {
  static constexpr int kWindow = 10;
  static constexpr double kUpperThreshold = 0.70;
  static constexpr double kLowerThreshold = 0.30;
  static constexpr double kStepSize = 1.0;

  double cutoff = -3.0;
  std::array<bool, kWindow> window{};
  int window_len = 0;
  int window_pos = 0;

  bool full() const { return window_len == kWindow; }
  double success_fraction() const;
};

/// Pushes the episode flag and moves the cutoff: down one step when the
/// full window's success fraction exceeds 70% (clamped to the minimum
/// candidate Q-value seen in the triggering selection), up one step below
/// 30%, unchanged otherwise.
CutoffState update_cutoff(CutoffState state, bool episode_success,
                          double min_candidate_q);

/// A buffer goal annotated for selection.
struct Candidate {
  GoalVec goal;
  int goal_id = 0;
  double log_density = 0.0;
  double q = 0.0;
};

/// Everything a Select call reads. q_value is bound to the episode's start
/// state by the caller. Not shared across threads.
struct SelectContext {
  const AchievedGoalBuffer& buffer;
  const DensityModel& density;
  std::function<double(int goal_id)> q_value;
  GoalVec desired_goal;
  int desired_goal_id = 0;
  Rng& rng;
  int num_candidates = 100;
};

/// What a selection produced, plus what the harness needs for bookkeeping:
/// the minimum candidate Q (for the cutoff clamp) and OMEGA's alpha.
struct Selection {
  GoalVec goal;
  int goal_id = 0;
  bool sampled_candidates = false;
  double min_candidate_q = 0.0;
  double alpha = 0.0;
};

/// N uniform draws with replacement from the achieved-goal buffer, each
/// annotated with its estimated log-density and Q-value. Throws
/// std::runtime_error on an empty buffer (callers fall back to the desired
/// goal).
std::vector<Candidate> sample_candidates(const SelectContext& ctx);

/// Keeps candidates with Q >= cutoff; when none survive, returns the single
/// candidate of maximal Q.
std::vector<Candidate> apply_cutoff(std::vector<Candidate> candidates,
                                    const CutoffState& state);

/// MEGA: minimum estimated log-density among cutoff-surviving candidates.
/// Ties break to the lowest candidate index.
Selection select_mega(const SelectContext& ctx, const CutoffState& cutoff);

/// OMEGA: alpha = 0 if the KL estimate is clamped at kKlMax, else
/// 1 / max(b + kl, 1); the desired goal with probability alpha, otherwise
/// the MEGA choice.
Selection select_omega(const SelectContext& ctx, const CutoffState& cutoff,
                       double kl_estimate, double b);

/// Pure alpha rule (unit-testable): 1/max(b + kl, 1), with kl == kKlMax
/// mapping to exactly 0.
double omega_alpha(double kl_estimate, double b);

/// Windowed empirical success frequency per goal bucket: the 200 most
/// recent (bucket, achieved) episode records, Laplace-smoothed with one
/// success and one failure pseudo-count.
class SuccessHistory {
 public:
  static constexpr std::size_t kWindow = 200;

  void update(int bucket, bool achieved);
  double frequency(int bucket) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<std::pair<int, bool>> records_;  // ring, oldest first
  std::size_t next_ = 0;
};

/// Baseline extras: GoalDisc needs the success history; the entropy-gain
/// oracle needs the exact pmf and conditional (toy setting only).
struct BaselineExtras {
  const SuccessHistory* success_history = nullptr;
  const CountedPmf* pmf = nullptr;
  const ConditionalModel* conditional = nullptr;
};

/// The non-MEGA Select mechanisms. Throws std::invalid_argument when a
/// strategy's required extra is missing, std::runtime_error on an empty
/// buffer (except Desired).
Selection select_baseline(Strategy strategy, const SelectContext& ctx,
                          const CutoffState& cutoff,
                          const BaselineExtras& extras);

}  // namespace megalab
