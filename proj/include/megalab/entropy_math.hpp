#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace megalab {

/// Exact probability mass function over goal ids {0, ..., size-1}.
/// Masses are nonnegative and sum to 1 within 1e-9 (validated).
class DiscretePmf {
 public:
  explicit DiscretePmf(std::vector<double> mass);

  /// Builds a pmf from nonnegative weights by normalizing them.
  static DiscretePmf from_weights(const std::vector<double>& weights);

  double operator()(int g) const { return mass_[static_cast<std::size_t>(g)]; }
  int size() const { return static_cast<int>(mass_.size()); }
  const std::vector<double>& mass() const { return mass_; }

  /// Shannon entropy in nats, with 0 log 0 := 0.
  double entropy() const;

 private:
  std::vector<double> mass_;
};

/// Empirical pmf backed by integer counts over goal ids {0, ..., size-1}.
/// p(g) = counts[g] / total, eta = 1 / total.
struct CountedPmf {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  static CountedPmf from_counts(std::vector<std::int64_t> counts);

  int universe() const { return static_cast<int>(counts.size()); }
  double p(int g) const {
    return static_cast<double>(counts[static_cast<std::size_t>(g)]) /
           static_cast<double>(total);
  }
  double eta() const { return 1.0 / static_cast<double>(total); }

  void add(int g) {
    counts[static_cast<std::size_t>(g)] += 1;
    total += 1;
  }

  /// Shannon entropy of the empirical distribution, in nats.
  double entropy() const;

  /// Number of goals with nonzero count.
  int support_size() const;
};

/// Conditional distribution q(g' | g_hat): one DiscretePmf row per
/// behavioural goal id.
class ConditionalModel {
 public:
  void set_row(int g_hat, DiscretePmf row);
  bool has_row(int g_hat) const { return rows_.count(g_hat) > 0; }
  const DiscretePmf& row(int g_hat) const;  // throws if the row is missing

 private:
  std::unordered_map<int, DiscretePmf> rows_;
};

/// Score returned by entropy_gradient_score when q places mass on goals the
/// pmf does not support (the KL term diverges). Compares as strictly largest
/// among finite scores.
inline constexpr double kScoreSentinel = std::numeric_limits<double>::max();

/// Point-wise entropy gain from one more observation of a goal with current
/// probability p, where eta = 1/|buffer|:
///   delta_h = p ln p - (p + eta) ln(p + eta),  with x ln x := 0 at x = 0.
/// Throws std::invalid_argument if p or eta is out of range.
double delta_h(double p, double eta);

/// Expected point-wise entropy gain of pursuing `candidate`:
///   sum_{g'} q(g'|candidate) * delta_h(p(g'), eta).
double expected_entropy_gain(const CountedPmf& pmf, const ConditionalModel& q,
                             int candidate);

/// Cross-entropy H(q_row, p) = -sum_{g'} q_row(g') ln p(g'), which equals
/// D_KL(q_row || p) + H[q_row]. Returns kScoreSentinel when q_row has mass
/// on a zero-probability goal.
double entropy_gradient_score(const CountedPmf& pmf, const DiscretePmf& q_row);

/// Exact expected next-step buffer entropy for `candidate`: for each
/// reachable g', builds the updated count vector (one more observation of
/// g') and averages its Shannon entropy under q(g'|candidate). Independent
/// of the delta_h route; argmax agreement with expected_entropy_gain is the
/// discrete entropy-gain identity.
double brute_force_next_entropy(const CountedPmf& pmf,
                                const ConditionalModel& q, int candidate);

}  // namespace megalab
