#include "megalab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "megalab/density.hpp"
#include "megalab/replay.hpp"
#include "megalab/select.hpp"

namespace megalab {

namespace {

// Independent RNG stream ids within a run.
enum StreamId : std::uint64_t {
  kStreamAction = 1,
  kStreamEnv = 2,
  kStreamSelect = 3,
  kStreamRelabel = 4,
  kStreamDensity = 5,
  kStreamEval = 6,
  kStreamKl = 7,
  kStreamMetrics = 8,
};

struct ResolvedConfig {
  RunConfig cfg;
  GridMaze env;
  Strategy strategy;
  Kernel kernel;
};

ResolvedConfig resolve(const RunConfig& input) {
  input.validate();
  ResolvedConfig r{input, GridMaze::by_name_or_path(input.env),
                   *parse_strategy(input.strategy), Kernel::kGaussian};
  if (r.strategy == Strategy::kEgOracle)
    throw std::invalid_argument(
        "train: eg-oracle needs the exact toy conditional; use the toy "
        "command");
  if (r.cfg.gamma == 0.0) r.cfg.gamma = r.env.recommended_gamma();
  if (r.cfg.total_steps == 0) r.cfg.total_steps = r.env.recommended_steps();
  r.kernel = r.cfg.kde_kernel == "exponential" ? Kernel::kExponential
                                               : Kernel::kGaussian;
  return r;
}

// Fits the KDE to the achieved-goal buffer when it changed since the last
// fit. Refitting is requested on every optimize step; materializing the fit
// lazily at the next query sees exactly the same buffer contents.
class DensityTracker {
 public:
  DensityTracker(const AchievedGoalBuffer& buffer, double bandwidth,
                 Kernel kernel, Rng& rng)
      : buffer_(buffer), bandwidth_(bandwidth), kernel_(kernel), rng_(rng) {}

  void mark_dirty() { dirty_ = true; }

  const DensityModel& model() {
    if (dirty_ && !buffer_.empty()) {
      model_ = fit_kde(buffer_.flat(), buffer_.size(), buffer_.dim(),
                       bandwidth_, kernel_, rng_);
      dirty_ = false;
    }
    return model_;
  }

 private:
  const AchievedGoalBuffer& buffer_;
  double bandwidth_;
  Kernel kernel_;
  Rng& rng_;
  DensityModel model_;
  bool dirty_ = true;
};

}  // namespace

double evaluate(const GoalTable& table, const GridMaze& env, int n_episodes,
                Rng& rng) {
  if (n_episodes == 0) {
    std::fprintf(stderr, "evaluate: called with zero episodes\n");
    return 0.0;
  }
  int successes = 0;
  for (int ep = 0; ep < n_episodes; ++ep) {
    auto [state, goal_id] = env.reset(rng);
    for (int t = 0; t < env.horizon(); ++t) {
      const int action = table.greedy_action(env.cell_id(state), goal_id);
      state = env.step(state, static_cast<MazeAction>(action));
      if (env.cell_id(state) == goal_id) {
        successes += 1;
        break;  // first-visit success
      }
    }
  }
  return static_cast<double>(successes) / n_episodes;
}

TrainResult train(const RunConfig& input, const MetricSink& sink) {
  const ResolvedConfig r = resolve(input);
  const RunConfig& cfg = r.cfg;
  const GridMaze& env = r.env;

  Rng action_rng = derive_stream(cfg.seed, kStreamAction);
  Rng env_rng = derive_stream(cfg.seed, kStreamEnv);
  Rng select_rng = derive_stream(cfg.seed, kStreamSelect);
  Rng relabel_rng = derive_stream(cfg.seed, kStreamRelabel);
  Rng density_rng = derive_stream(cfg.seed, kStreamDensity);
  Rng eval_rng = derive_stream(cfg.seed, kStreamEval);
  Rng kl_rng = derive_stream(cfg.seed, kStreamKl);
  Rng metrics_rng = derive_stream(cfg.seed, kStreamMetrics);

  const int num_cells = env.num_cells();
  GoalTable table(num_cells, env.num_actions(), num_cells, cfg.gamma,
                  cfg.learning_rate);
  GoalBuffers buffers(2, static_cast<std::size_t>(cfg.max_buffer));
  TransitionStore store(static_cast<std::size_t>(cfg.max_buffer));
  DensityTracker density(buffers.achieved, cfg.kde_bandwidth, r.kernel,
                         density_rng);
  CutoffState cutoff;
  SuccessHistory success_history;
  ExplorationState exploration{cfg.epsilon, cfg.go_bonus, 0};

  const RewardFn reward = [](int achieved, int goal) {
    return achieved == goal ? 0.0 : -1.0;
  };
  const auto desired_sampler = [&env](Rng& rng) {
    const auto& region = env.desired_region();
    const Cell c = region[rng.index(region.size())];
    return GoalVec{static_cast<double>(c.x), static_cast<double>(c.y)};
  };
  // Desired goals are uniform over the region; as a mass function the
  // log-density is -ln|region|, constant across samples.
  const double desired_log_density =
      -std::log(static_cast<double>(env.desired_region().size()));

  TrainResult result{{}, table};
  long step = 0;
  int episode = 0;
  double last_alpha = 0.0;
  int interval_intrinsic = 0;
  int interval_episodes = 0;
  std::vector<Transition> episode_transitions;
  std::vector<GoalVec> episode_achieved;

  while (step < cfg.total_steps) {
    auto [state, desired_id] = env.reset(env_rng);
    const GoalVec desired_vec = env.goal_vec(desired_id);

    // Behavioural goal selection. Before the first stored episode the
    // buffer is empty and every strategy falls back to the desired goal.
    Selection selection;
    if (buffers.achieved.empty()) {
      selection.goal = desired_vec;
      selection.goal_id = desired_id;
    } else {
      SelectContext ctx{
          buffers.achieved,
          density.model(),
          [&](int goal_id) {
            return table.max_value(env.cell_id(state), goal_id);
          },
          desired_vec,
          desired_id,
          select_rng,
          cfg.num_candidates,
      };
      switch (r.strategy) {
        case Strategy::kMega:
          selection = select_mega(ctx, cutoff);
          break;
        case Strategy::kOmega: {
          const double kl =
              estimate_kl(density.model(), desired_sampler,
                          [&](const GoalVec&) { return desired_log_density; },
                          cfg.kl_samples, kl_rng);
          selection = select_omega(ctx, cutoff, kl, cfg.omega_b);
          last_alpha = selection.alpha;
          break;
        }
        default: {
          BaselineExtras extras;
          extras.success_history = &success_history;
          selection = select_baseline(r.strategy, ctx, cutoff, extras);
          break;
        }
      }
    }

    exploration.reset_episode();
    episode_transitions.clear();
    episode_achieved.clear();
    bool intrinsic_success = false;

    for (int t = 0; t < env.horizon(); ++t) {
      int action;
      if (step < cfg.warmup_random_steps) {
        action = static_cast<int>(
            action_rng.index(static_cast<std::size_t>(env.num_actions())));
      } else {
        action = act(table, env.cell_id(state), selection.goal_id,
                     exploration, action_rng);
      }
      const Cell next = env.step(state, static_cast<MazeAction>(action));
      const int achieved_id = env.cell_id(next);
      const bool achieved_now = achieved_id == selection.goal_id;
      if (achieved_now) intrinsic_success = true;
      exploration = register_achievement(exploration, achieved_now);

      Transition tr;
      tr.state = env.cell_id(state);
      tr.action = action;
      tr.next_state = achieved_id;
      tr.goal = selection.goal_id;
      tr.achieved_goal = achieved_id;
      tr.episode_id = episode;
      tr.step_index = t;
      tr.reward = reward(achieved_id, selection.goal_id);
      episode_transitions.push_back(tr);
      episode_achieved.push_back(env.goal_vec(achieved_id));

      state = next;
      step += 1;

      if (step > cfg.warmup_random_steps && !store.empty()) {
        std::vector<Transition> batch =
            store.sample(static_cast<std::size_t>(cfg.batch_size),
                         relabel_rng);
        batch = step <= cfg.warmup_relabel_steps
                    ? relabel_future(store, std::move(batch), reward,
                                     relabel_rng)
                    : relabel_rfaab(store, std::move(batch), cfg.rfaab,
                                    buffers, reward, relabel_rng);
        table.optimize_batch(batch);
        density.mark_dirty();
      }
    }

    store_episode(episode_transitions, episode_achieved, selection.goal_id,
                  desired_id, buffers, store);
    density.mark_dirty();
    success_history.update(selection.goal_id, intrinsic_success);
    cutoff = update_cutoff(cutoff, intrinsic_success,
                           selection.sampled_candidates
                               ? selection.min_candidate_q
                               : table.clip_lower());

    episode += 1;
    interval_episodes += 1;
    interval_intrinsic += intrinsic_success ? 1 : 0;

    if (episode % cfg.episodes_per_eval == 0) {
      MetricRecord rec;
      rec.step = step;
      rec.test_success = evaluate(table, env, cfg.eval_episodes, eval_rng);
      const std::size_t eval_n =
          std::min<std::size_t>(buffers.achieved.size(),
                                static_cast<std::size_t>(cfg.entropy_samples));
      std::vector<double> eval_flat;
      eval_flat.reserve(eval_n * 2);
      for (std::size_t i = 0; i < eval_n; ++i) {
        const GoalVec g =
            buffers.achieved.coords_at(buffers.achieved.sample_index(metrics_rng));
        eval_flat.insert(eval_flat.end(), g.begin(), g.end());
      }
      rec.entropy = estimate_entropy(density.model(), eval_flat, eval_n);
      if (r.strategy == Strategy::kOmega) rec.alpha = last_alpha;
      rec.intrinsic_success =
          static_cast<double>(interval_intrinsic) / interval_episodes;
      rec.cutoff = cutoff.cutoff;
      interval_intrinsic = 0;
      interval_episodes = 0;
      result.records.push_back(rec);
      if (sink) sink(rec);
    }
  }

  if (!cfg.dump_achieved.empty()) {
    std::FILE* f = std::fopen(cfg.dump_achieved.c_str(), "w");
    if (f == nullptr)
      throw std::runtime_error("train: cannot open achieved-goal dump '" +
                               cfg.dump_achieved + "'");
    for (std::size_t i = 0; i < buffers.achieved.size(); ++i) {
      const GoalVec g = buffers.achieved.coords_at(i);
      for (std::size_t d = 0; d < g.size(); ++d)
        std::fprintf(f, d + 1 == g.size() ? "%s\n" : "%s,",
                     format_metric(g[d]).c_str());
    }
    std::fclose(f);
  }

  result.table = table;
  return result;
}

}  // namespace megalab
