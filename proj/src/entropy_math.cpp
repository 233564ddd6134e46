#include "megalab/entropy_math.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace megalab {

namespace {

inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

DiscretePmf::DiscretePmf(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw std::invalid_argument("DiscretePmf: empty mass");
  double sum = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0)) throw std::invalid_argument("DiscretePmf: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("DiscretePmf: masses sum to " +
                                std::to_string(sum) + ", expected 1");
}

DiscretePmf DiscretePmf::from_weights(const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw std::invalid_argument("DiscretePmf: negative weight");
    sum += w;
  }
  if (sum <= 0.0) throw std::invalid_argument("DiscretePmf: zero weight sum");
  std::vector<double> mass(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) mass[i] = weights[i] / sum;
  return DiscretePmf(std::move(mass));
}

double DiscretePmf::entropy() const {
  double h = 0.0;
  for (double m : mass_) h -= xlnx(m);
  return h;
}

CountedPmf CountedPmf::from_counts(std::vector<std::int64_t> counts) {
  CountedPmf pmf;
  pmf.counts = std::move(counts);
  for (std::int64_t c : pmf.counts) {
    if (c < 0) throw std::invalid_argument("CountedPmf: negative count");
    pmf.total += c;
  }
  if (pmf.total <= 0) throw std::invalid_argument("CountedPmf: empty");
  return pmf;
}

double CountedPmf::entropy() const {
  const double t = static_cast<double>(total);
  double h = 0.0;
  for (std::int64_t c : counts) {
    if (c > 0) h -= xlnx(static_cast<double>(c) / t);
  }
  return h;
}

int CountedPmf::support_size() const {
  int n = 0;
  for (std::int64_t c : counts) n += (c > 0);
  return n;
}

void ConditionalModel::set_row(int g_hat, DiscretePmf row) {
  rows_.insert_or_assign(g_hat, std::move(row));
}

const DiscretePmf& ConditionalModel::row(int g_hat) const {
  auto it = rows_.find(g_hat);
  if (it == rows_.end())
    throw std::out_of_range("ConditionalModel: no row for goal " +
                            std::to_string(g_hat));
  return it->second;
}

double delta_h(double p, double eta) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("delta_h: p out of [0,1]");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("delta_h: eta out of (0,1]");
  if (p + eta > 1.0 + 1e-9)
    throw std::invalid_argument("delta_h: p + eta exceeds 1");
  return xlnx(p) - xlnx(p + eta);
}

double expected_entropy_gain(const CountedPmf& pmf, const ConditionalModel& q,
                             int candidate) {
  const DiscretePmf& row = q.row(candidate);
  if (row.size() > pmf.universe())
    throw std::invalid_argument(
        "expected_entropy_gain: conditional support exceeds pmf universe");
  const double eta = pmf.eta();
  double gain = 0.0;
  for (int g = 0; g < row.size(); ++g) {
    const double w = row(g);
    if (w > 0.0) gain += w * delta_h(pmf.p(g), eta);
  }
  return gain;
}

double entropy_gradient_score(const CountedPmf& pmf, const DiscretePmf& q_row) {
  if (q_row.size() > pmf.universe())
    throw std::invalid_argument(
        "entropy_gradient_score: q support exceeds pmf universe");
  double score = 0.0;
  for (int g = 0; g < q_row.size(); ++g) {
    const double w = q_row(g);
    if (w <= 0.0) continue;
    const double p = pmf.p(g);
    if (p <= 0.0) return kScoreSentinel;
    score -= w * std::log(p);
  }
  return score;
}

double brute_force_next_entropy(const CountedPmf& pmf,
                                const ConditionalModel& q, int candidate) {
  const DiscretePmf& row = q.row(candidate);
  if (row.size() > pmf.universe())
    throw std::invalid_argument(
        "brute_force_next_entropy: conditional support exceeds pmf universe");
  const double new_total = static_cast<double>(pmf.total + 1);
  double expected = 0.0;
  for (int g_next = 0; g_next < row.size(); ++g_next) {
    const double w = row(g_next);
    if (w <= 0.0) continue;
    // Entropy of the buffer after observing g_next once.
    double h = 0.0;
    for (int g = 0; g < pmf.universe(); ++g) {
      std::int64_t c = pmf.counts[static_cast<std::size_t>(g)];
      if (g == g_next) c += 1;
      if (c > 0) h -= xlnx(static_cast<double>(c) / new_total);
    }
    expected += w * h;
  }
  return expected;
}

}  // namespace megalab
