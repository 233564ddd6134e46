#include "megalab/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace megalab {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;  // ln(2*pi)

// exp(x) underflows to exactly 0 below this, so skipping such terms in the
// log-sum-exp accumulation leaves the sum bit-identical.
constexpr double kExpUnderflow = -746.0;

// Hash key for exact-duplicate detection of z-scored points.
struct PointKey {
  const double* data;
  int dim;
  bool operator==(const PointKey& o) const {
    return std::memcmp(data, o.data, sizeof(double) * dim) == 0;
  }
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(k.data);
    for (std::size_t i = 0; i < sizeof(double) * k.dim; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// Per-query mixture log-density over the unique weighted points. This is
// the one kernel both the serial and OpenMP batch paths call.
double query_kernel(const DensityModel& m, const double* z) {
  const std::size_t k = m.unique_count();
  const double* pts = m.points.data();
  const double inv_h = 1.0 / m.bandwidth;
  const double inv_2h2 = 0.5 * inv_h * inv_h;

  // Pass 1: exponents and their max.
  thread_local std::vector<double> expo;
  expo.resize(k);
  double max_e = -std::numeric_limits<double>::infinity();
  if (m.kernel == Kernel::kGaussian) {
    for (std::size_t j = 0; j < k; ++j) {
      double sq = 0.0;
      const double* p = pts + j * m.dim;
      for (int d = 0; d < m.dim; ++d) {
        const double diff = z[d] - p[d];
        sq += diff * diff;
      }
      const double e = -sq * inv_2h2;
      expo[j] = e;
      if (e > max_e) max_e = e;
    }
  } else {
    for (std::size_t j = 0; j < k; ++j) {
      double l1 = 0.0;
      const double* p = pts + j * m.dim;
      for (int d = 0; d < m.dim; ++d) l1 += std::abs(z[d] - p[d]);
      const double e = -l1 * inv_h;
      expo[j] = e;
      if (e > max_e) max_e = e;
    }
  }

  // Pass 2: weighted log-sum-exp.
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double shifted = expo[j] - max_e;
    if (shifted < kExpUnderflow) continue;
    sum += m.weights[j] * std::exp(shifted);
  }

  // Kernel normalization: Gaussian is (2*pi)^(-d/2) h^(-d); the exponential
  // kernel is the product of 1-D Laplace kernels, (2h)^(-d).
  const double log_norm =
      m.kernel == Kernel::kGaussian
          ? -0.5 * m.dim * kLogTwoPi - m.dim * std::log(m.bandwidth)
          : -m.dim * std::log(2.0 * m.bandwidth);

  return max_e + std::log(sum) -
         std::log(static_cast<double>(m.fitted_count)) + log_norm;
}

void zscore(const DensityModel& m, const double* raw, double* z) {
  for (int d = 0; d < m.dim; ++d) {
    if (!std::isfinite(raw[d]))
      throw std::invalid_argument("log_density: non-finite query component");
    z[d] = (raw[d] - m.norm_mean[d]) / m.norm_std[d];
  }
}

}  // namespace

DensityModel fit_kde(std::span<const double> samples, std::size_t count,
                     int dim, double bandwidth, Kernel kernel, Rng& rng) {
  if (count == 0) throw std::invalid_argument("fit_kde: empty sample set");
  if (dim <= 0) throw std::invalid_argument("fit_kde: nonpositive dimension");
  if (samples.size() != count * static_cast<std::size_t>(dim))
    throw std::invalid_argument("fit_kde: sample buffer size mismatch");
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("fit_kde: nonpositive bandwidth");

  DensityModel m;
  m.bandwidth = bandwidth;
  m.kernel = kernel;
  m.dim = dim;
  m.norm_mean.assign(dim, 0.0);
  m.norm_std.assign(dim, 0.0);

  for (std::size_t i = 0; i < count; ++i)
    for (int d = 0; d < dim; ++d) m.norm_mean[d] += samples[i * dim + d];
  for (int d = 0; d < dim; ++d) m.norm_mean[d] /= static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i)
    for (int d = 0; d < dim; ++d) {
      const double diff = samples[i * dim + d] - m.norm_mean[d];
      m.norm_std[d] += diff * diff;
    }
  for (int d = 0; d < dim; ++d) {
    m.norm_std[d] = std::sqrt(m.norm_std[d] / static_cast<double>(count));
    if (m.norm_std[d] < kSigmaMin) m.norm_std[d] = kSigmaMin;
  }

  m.fitted_count = std::min(count, kFitSampleCap);
  m.points.reserve(m.fitted_count * dim);
  m.weights.reserve(std::min<std::size_t>(m.fitted_count, 1024));

  std::unordered_map<PointKey, std::size_t, PointKeyHash> seen;
  seen.reserve(m.fitted_count);
  std::vector<double> z(dim);
  for (std::size_t i = 0; i < m.fitted_count; ++i) {
    const std::size_t src = count > kFitSampleCap ? rng.index(count) : i;
    for (int d = 0; d < dim; ++d)
      z[d] = (samples[src * dim + d] - m.norm_mean[d]) / m.norm_std[d];
    PointKey key{z.data(), dim};
    auto it = seen.find(key);
    if (it != seen.end()) {
      m.weights[it->second] += 1.0;
      continue;
    }
    // Map keys point into m.points; the reserve above covers the all-unique
    // worst case, so the storage never reallocates while keys are live.
    const std::size_t slot = m.weights.size();
    m.points.insert(m.points.end(), z.begin(), z.end());
    m.weights.push_back(1.0);
    seen.emplace(PointKey{m.points.data() + slot * dim, dim}, slot);
  }
  return m;
}

DensityModel fit_kde(const std::vector<GoalVec>& samples, double bandwidth,
                     Kernel kernel, Rng& rng) {
  if (samples.empty()) throw std::invalid_argument("fit_kde: empty sample set");
  const int dim = static_cast<int>(samples.front().size());
  std::vector<double> flat;
  flat.reserve(samples.size() * dim);
  for (const GoalVec& g : samples) {
    if (static_cast<int>(g.size()) != dim)
      throw std::invalid_argument("fit_kde: inconsistent sample dimensions");
    flat.insert(flat.end(), g.begin(), g.end());
  }
  return fit_kde(flat, samples.size(), dim, bandwidth, kernel, rng);
}

double log_density(const DensityModel& model, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(model.dim))
    throw std::invalid_argument("log_density: query dimension mismatch");
  std::vector<double> z(model.dim);
  zscore(model, point.data(), z.data());
  return query_kernel(model, z.data());
}

double log_density(const DensityModel& model, const GoalVec& point) {
  return log_density(model, std::span<const double>(point));
}

void log_density_batch_serial(const DensityModel& model,
                              std::span<const double> points, std::size_t n,
                              std::span<double> out) {
  std::vector<double> z(model.dim);
  for (std::size_t i = 0; i < n; ++i) {
    zscore(model, points.data() + i * model.dim, z.data());
    out[i] = query_kernel(model, z.data());
  }
}

void log_density_batch(const DensityModel& model,
                       std::span<const double> points, std::size_t n,
                       std::span<double> out) {
#pragma omp parallel
  {
    std::vector<double> z(model.dim);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      zscore(model, points.data() + i * model.dim, z.data());
      out[i] = query_kernel(model, z.data());
    }
  }
}

double estimate_entropy(const DensityModel& model,
                        std::span<const double> eval_samples, std::size_t n) {
  if (n == 0) throw std::invalid_argument("estimate_entropy: empty eval set");
  std::vector<double> logs(n);
  log_density_batch(model, eval_samples, n, logs);
  double sum = 0.0;
  for (double v : logs) sum += v;
  return -sum / static_cast<double>(n);
}

double estimate_entropy(const DensityModel& model,
                        const std::vector<GoalVec>& eval_samples) {
  std::vector<double> flat;
  flat.reserve(eval_samples.size() * model.dim);
  for (const GoalVec& g : eval_samples)
    flat.insert(flat.end(), g.begin(), g.end());
  return estimate_entropy(model, flat, eval_samples.size());
}

double estimate_kl(const DensityModel& ag_model,
                   const std::function<GoalVec(Rng&)>& desired_sampler,
                   const std::function<double(const GoalVec&)>& desired_log_density,
                   int n_samples, Rng& rng) {
  if (n_samples <= 0)
    throw std::invalid_argument("estimate_kl: nonpositive sample count");
  std::vector<double> flat;
  std::vector<double> desired_logs;
  flat.reserve(static_cast<std::size_t>(n_samples) * ag_model.dim);
  desired_logs.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    GoalVec g = desired_sampler(rng);
    desired_logs.push_back(desired_log_density(g));
    flat.insert(flat.end(), g.begin(), g.end());
  }
  std::vector<double> ag_logs(static_cast<std::size_t>(n_samples));
  log_density_batch(ag_model, flat, static_cast<std::size_t>(n_samples),
                    ag_logs);
  double sum = 0.0;
  for (int i = 0; i < n_samples; ++i) sum += desired_logs[i] - ag_logs[i];
  const double kl = sum / static_cast<double>(n_samples);
  return std::clamp(kl, 0.0, kKlMax);
}

}  // namespace megalab
