#include "megalab/toy_runner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "megalab/entropy_math.hpp"
#include "megalab/rng.hpp"
#include "megalab/toy_chain.hpp"

namespace megalab {

namespace {

enum class ToyPolicy { kAchieved, kDiverse, kMega, kEgOracle };

ToyPolicy parse_policy(const std::string& name) {
  if (name == "achieved") return ToyPolicy::kAchieved;
  if (name == "diverse") return ToyPolicy::kDiverse;
  if (name == "mega") return ToyPolicy::kMega;
  if (name == "eg-oracle") return ToyPolicy::kEgOracle;
  throw std::invalid_argument("toy: unknown policy '" + name + "'");
}

// One behavioural-goal pick from the buffer per the policy's rule. Argmin /
// argmax ties resolve by a uniform draw over the tie set (the policies are
// distributions proportional to indicators).
int pick_goal(ToyPolicy policy, const CountedPmf& pmf,
              const ConditionalModel& cond, Rng& rng) {
  if (pmf.support_size() == 1) {
    // Forced pick; also the only state where some p(g) = 1, which the
    // entropy-gain formula's p + eta <= 1 precondition excludes.
    for (int g = 0; g < pmf.universe(); ++g)
      if (pmf.counts[static_cast<std::size_t>(g)] > 0) return g;
  }
  switch (policy) {
    case ToyPolicy::kAchieved: {
      // Proportional to mass == uniform over buffer entries.
      std::int64_t k = static_cast<std::int64_t>(
          rng.index(static_cast<std::size_t>(pmf.total)));
      for (int g = 0; g < pmf.universe(); ++g) {
        k -= pmf.counts[static_cast<std::size_t>(g)];
        if (k < 0) return g;
      }
      return pmf.universe() - 1;
    }
    case ToyPolicy::kDiverse: {
      std::size_t k = rng.index(static_cast<std::size_t>(pmf.support_size()));
      for (int g = 0; g < pmf.universe(); ++g) {
        if (pmf.counts[static_cast<std::size_t>(g)] == 0) continue;
        if (k == 0) return g;
        k -= 1;
      }
      return pmf.universe() - 1;
    }
    case ToyPolicy::kMega: {
      std::int64_t min_count = std::numeric_limits<std::int64_t>::max();
      for (std::int64_t c : pmf.counts)
        if (c > 0 && c < min_count) min_count = c;
      std::vector<int> ties;
      for (int g = 0; g < pmf.universe(); ++g)
        if (pmf.counts[static_cast<std::size_t>(g)] == min_count)
          ties.push_back(g);
      return ties[rng.index(ties.size())];
    }
    case ToyPolicy::kEgOracle: {
      double best = -std::numeric_limits<double>::infinity();
      std::vector<int> ties;
      for (int g = 0; g < pmf.universe(); ++g) {
        if (pmf.counts[static_cast<std::size_t>(g)] == 0) continue;
        const double gain = expected_entropy_gain(pmf, cond, g);
        if (gain > best) {
          best = gain;
          ties.assign(1, g);
        } else if (gain == best) {
          ties.push_back(g);
        }
      }
      return ties[rng.index(ties.size())];
    }
  }
  throw std::logic_error("toy: unreachable policy");
}

}  // namespace

std::vector<ToyCurve> run_toy(const ToyConfig& config) {
  if (config.n <= 0) throw std::invalid_argument("toy: n must be positive");
  if (config.iterations <= 0)
    throw std::invalid_argument("toy: iterations must be positive");
  if (config.trials <= 0)
    throw std::invalid_argument("toy: trials must be positive");
  if (config.policies.empty())
    throw std::invalid_argument("toy: no policies given");

  const ToyChain chain{config.n};
  const ConditionalModel cond = chain.conditional();
  const int rows = config.iterations + 1;

  std::vector<ToyCurve> curves;
  for (std::size_t pi = 0; pi < config.policies.size(); ++pi) {
    const ToyPolicy policy = parse_policy(config.policies[pi]);

    // One row per (trial, iteration); trials fill disjoint slots, so the
    // parallel loop is deterministic at any thread count.
    std::vector<double> entropy(
        static_cast<std::size_t>(config.trials) * rows);
    std::vector<double> support(
        static_cast<std::size_t>(config.trials) * rows);

#pragma omp parallel for schedule(static)
    for (int trial = 0; trial < config.trials; ++trial) {
      Rng rng = derive_stream(config.seed,
                              1000 + 10000 * pi + static_cast<std::uint64_t>(trial));
      CountedPmf pmf;
      pmf.counts.assign(static_cast<std::size_t>(chain.universe()), 0);
      pmf.counts[static_cast<std::size_t>(config.n)] = 1;  // buffer = {n}
      pmf.total = 1;

      double* ent_row = entropy.data() + static_cast<std::size_t>(trial) * rows;
      double* sup_row = support.data() + static_cast<std::size_t>(trial) * rows;
      ent_row[0] = pmf.entropy();
      sup_row[0] = pmf.support_size();
      for (int it = 1; it <= config.iterations; ++it) {
        const int g_hat = pick_goal(policy, pmf, cond, rng);
        const int achieved = chain.sample(g_hat, rng);
        pmf.add(achieved);
        ent_row[it] = pmf.entropy();
        sup_row[it] = pmf.support_size();
      }
    }

    ToyCurve curve;
    curve.policy = config.policies[pi];
    curve.mean_entropy.resize(static_cast<std::size_t>(rows));
    curve.std_entropy.resize(static_cast<std::size_t>(rows));
    curve.mean_support.resize(static_cast<std::size_t>(rows));
    curve.std_support.resize(static_cast<std::size_t>(rows));
    for (int it = 0; it < rows; ++it) {
      double esum = 0.0, ssum = 0.0;
      for (int trial = 0; trial < config.trials; ++trial) {
        esum += entropy[static_cast<std::size_t>(trial) * rows + it];
        ssum += support[static_cast<std::size_t>(trial) * rows + it];
      }
      const double emean = esum / config.trials;
      const double smean = ssum / config.trials;
      double evar = 0.0, svar = 0.0;
      for (int trial = 0; trial < config.trials; ++trial) {
        const double de =
            entropy[static_cast<std::size_t>(trial) * rows + it] - emean;
        const double ds =
            support[static_cast<std::size_t>(trial) * rows + it] - smean;
        evar += de * de;
        svar += ds * ds;
      }
      curve.mean_entropy[static_cast<std::size_t>(it)] = emean;
      curve.std_entropy[static_cast<std::size_t>(it)] =
          std::sqrt(evar / config.trials);
      curve.mean_support[static_cast<std::size_t>(it)] = smean;
      curve.std_support[static_cast<std::size_t>(it)] =
          std::sqrt(svar / config.trials);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

void write_toy_csv(const std::vector<ToyCurve>& curves, ToyWriter& writer) {
  for (const ToyCurve& curve : curves) {
    for (std::size_t it = 0; it < curve.mean_entropy.size(); ++it) {
      writer.write_row(static_cast<long>(it), curve.policy,
                       curve.mean_entropy[it], curve.std_entropy[it],
                       curve.mean_support[it], curve.std_support[it]);
    }
  }
}

}  // namespace megalab
