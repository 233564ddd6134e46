#include "megalab/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace megalab {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kDesired: return "desired";
    case Strategy::kAchieved: return "achieved";
    case Strategy::kDiverse: return "diverse";
    case Strategy::kMinQ: return "minq";
    case Strategy::kGoalDisc: return "goaldisc";
    case Strategy::kMega: return "mega";
    case Strategy::kOmega: return "omega";
    case Strategy::kEgOracle: return "eg-oracle";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(const std::string& name) {
  for (Strategy s :
       {Strategy::kDesired, Strategy::kAchieved, Strategy::kDiverse,
        Strategy::kMinQ, Strategy::kGoalDisc, Strategy::kMega,
        Strategy::kOmega, Strategy::kEgOracle}) {
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

double CutoffState::success_fraction() const {
  if (window_len == 0) return 0.0;
  int successes = 0;
  for (int i = 0; i < window_len; ++i) successes += window[static_cast<std::size_t>(i)];
  return static_cast<double>(successes) / window_len;
}

CutoffState update_cutoff(CutoffState state, bool episode_success,
                          double min_candidate_q) {
  state.window[static_cast<std::size_t>(state.window_pos)] = episode_success;
  state.window_pos = (state.window_pos + 1) % CutoffState::kWindow;
  if (state.window_len < CutoffState::kWindow) state.window_len += 1;

  if (!state.full()) return state;
  const double frac = state.success_fraction();
  if (frac > CutoffState::kUpperThreshold) {
    state.cutoff -= CutoffState::kStepSize;
    if (state.cutoff < min_candidate_q) state.cutoff = min_candidate_q;
  } else if (frac < CutoffState::kLowerThreshold) {
    state.cutoff += CutoffState::kStepSize;
  }
  return state;
}

std::vector<Candidate> sample_candidates(const SelectContext& ctx) {
  if (ctx.buffer.empty())
    throw std::runtime_error("sample_candidates: achieved-goal buffer empty");
  if (ctx.num_candidates < 1)
    throw std::invalid_argument("sample_candidates: num_candidates < 1");

  const int n = ctx.num_candidates;
  std::vector<Candidate> candidates(static_cast<std::size_t>(n));
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * ctx.buffer.dim());
  for (int i = 0; i < n; ++i) {
    const std::size_t idx = ctx.buffer.sample_index(ctx.rng);
    Candidate& c = candidates[static_cast<std::size_t>(i)];
    c.goal = ctx.buffer.coords_at(idx);
    c.goal_id = ctx.buffer.id_at(idx);
    c.q = ctx.q_value(c.goal_id);
    flat.insert(flat.end(), c.goal.begin(), c.goal.end());
  }
  std::vector<double> logs(static_cast<std::size_t>(n));
  log_density_batch(ctx.density, flat, static_cast<std::size_t>(n), logs);
  for (int i = 0; i < n; ++i)
    candidates[static_cast<std::size_t>(i)].log_density =
        logs[static_cast<std::size_t>(i)];
  return candidates;
}

std::vector<Candidate> apply_cutoff(std::vector<Candidate> candidates,
                                    const CutoffState& state) {
  if (candidates.empty())
    throw std::invalid_argument("apply_cutoff: empty candidate list");
  std::vector<Candidate> kept;
  kept.reserve(candidates.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].q >= state.cutoff) kept.push_back(candidates[i]);
    if (candidates[i].q > candidates[best].q) best = i;
  }
  if (kept.empty()) kept.push_back(candidates[best]);
  return kept;
}

namespace {

double min_q(const std::vector<Candidate>& candidates) {
  double m = candidates.front().q;
  for (const Candidate& c : candidates) m = std::min(m, c.q);
  return m;
}

Selection from_candidate(const Candidate& c, double min_candidate_q) {
  Selection s;
  s.goal = c.goal;
  s.goal_id = c.goal_id;
  s.sampled_candidates = true;
  s.min_candidate_q = min_candidate_q;
  return s;
}

Selection desired_selection(const SelectContext& ctx) {
  Selection s;
  s.goal = ctx.desired_goal;
  s.goal_id = ctx.desired_goal_id;
  return s;
}

}  // namespace

Selection select_mega(const SelectContext& ctx, const CutoffState& cutoff) {
  std::vector<Candidate> candidates = sample_candidates(ctx);
  const double mq = min_q(candidates);
  std::vector<Candidate> kept = apply_cutoff(std::move(candidates), cutoff);
  std::size_t best = 0;
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (kept[i].log_density < kept[best].log_density) best = i;
  return from_candidate(kept[best], mq);
}

double omega_alpha(double kl_estimate, double b) {
  if (kl_estimate >= kKlMax) return 0.0;
  return 1.0 / std::max(b + kl_estimate, 1.0);
}

Selection select_omega(const SelectContext& ctx, const CutoffState& cutoff,
                       double kl_estimate, double b) {
  const double alpha = omega_alpha(kl_estimate, b);
  Selection s;
  if (ctx.rng.uniform() < alpha) {
    s = desired_selection(ctx);
  } else {
    s = select_mega(ctx, cutoff);
  }
  s.alpha = alpha;
  return s;
}

void SuccessHistory::update(int bucket, bool achieved) {
  if (records_.size() < kWindow) {
    records_.emplace_back(bucket, achieved);
  } else {
    records_[next_] = {bucket, achieved};
    next_ = (next_ + 1) % kWindow;
  }
}

double SuccessHistory::frequency(int bucket) const {
  int successes = 0;
  int attempts = 0;
  for (const auto& [b, achieved] : records_) {
    if (b != bucket) continue;
    attempts += 1;
    successes += achieved;
  }
  return (successes + 1.0) / (attempts + 2.0);
}

Selection select_baseline(Strategy strategy, const SelectContext& ctx,
                          const CutoffState& cutoff,
                          const BaselineExtras& extras) {
  switch (strategy) {
    case Strategy::kDesired:
      return desired_selection(ctx);

    case Strategy::kAchieved: {
      if (ctx.buffer.empty())
        throw std::runtime_error("select: achieved-goal buffer empty");
      const std::size_t idx = ctx.buffer.sample_index(ctx.rng);
      Selection s;
      s.goal = ctx.buffer.coords_at(idx);
      s.goal_id = ctx.buffer.id_at(idx);
      return s;
    }

    case Strategy::kDiverse: {
      std::vector<Candidate> candidates = sample_candidates(ctx);
      // Weights proportional to 1 / p_hat. Shift by the max log-density
      // before exponentiating; the normalization absorbs the shift.
      double max_neg = -candidates.front().log_density;
      for (const Candidate& c : candidates)
        max_neg = std::max(max_neg, -c.log_density);
      std::vector<double> weights(candidates.size());
      double total = 0.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        weights[i] = std::exp(-candidates[i].log_density - max_neg);
        total += weights[i];
      }
      const double u = ctx.rng.uniform() * total;
      double acc = 0.0;
      std::size_t pick = candidates.size() - 1;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        acc += weights[i];
        if (u < acc) {
          pick = i;
          break;
        }
      }
      return from_candidate(candidates[pick], min_q(candidates));
    }

    case Strategy::kMinQ: {
      std::vector<Candidate> candidates = sample_candidates(ctx);
      const double mq = min_q(candidates);
      std::vector<Candidate> kept = apply_cutoff(std::move(candidates), cutoff);
      std::size_t best = 0;
      for (std::size_t i = 1; i < kept.size(); ++i)
        if (kept[i].q < kept[best].q) best = i;
      return from_candidate(kept[best], mq);
    }

    case Strategy::kGoalDisc: {
      if (extras.success_history == nullptr)
        throw std::invalid_argument("select: goaldisc needs a success history");
      std::vector<Candidate> candidates = sample_candidates(ctx);
      // Intermediate difficulty: frequency closest to 0.5. No Q cutoff.
      std::size_t best = 0;
      double best_gap = 2.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double gap = std::abs(
            extras.success_history->frequency(candidates[i].goal_id) - 0.5);
        if (gap < best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      return from_candidate(candidates[best], min_q(candidates));
    }

    case Strategy::kEgOracle: {
      if (extras.pmf == nullptr || extras.conditional == nullptr)
        throw std::invalid_argument(
            "select: eg-oracle needs the exact pmf and conditional");
      std::vector<Candidate> candidates = sample_candidates(ctx);
      std::size_t best = 0;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double gain = expected_entropy_gain(
            *extras.pmf, *extras.conditional, candidates[i].goal_id);
        if (gain > best_gain) {
          best_gain = gain;
          best = i;
        }
      }
      return from_candidate(candidates[best], min_q(candidates));
    }

    case Strategy::kMega:
    case Strategy::kOmega:
      throw std::invalid_argument(
          "select_baseline: use select_mega / select_omega");
  }
  throw std::invalid_argument("select_baseline: unknown strategy");
}

}  // namespace megalab
