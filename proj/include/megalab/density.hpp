#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "megalab/goal.hpp"
#include "megalab/rng.hpp"

namespace megalab {

enum class Kernel { kGaussian, kExponential };

/// Floor applied to per-dimension standard deviations so that constant
/// dimensions (common at the start of training) stay normalizable.
inline constexpr double kSigmaMin = 1e-6;

/// Maximum number of samples kept per fit; larger sample sets are
/// subsampled uniformly at random.
inline constexpr std::size_t kFitSampleCap = 10000;

/// Upper clamp on Monte-Carlo KL estimates. A clamped estimate stands in
/// for "the divergence is infinite" on disjoint supports.
inline constexpr double kKlMax = 50.0;

/// Kernel density estimator fitted to z-scored goal samples. Densities are
/// reported in the normalized space with no Jacobian correction; every
/// consumer either ranks with them or compares two estimates that share the
/// same normalization, so the constant offset cancels.
///
/// Duplicate samples are collapsed into a single point with an integer
/// weight; the represented mixture is unchanged. Achieved goals on a grid
/// make this a large constant-factor win.
///
/// A fitted model is immutable and safe to query from multiple threads.
struct DensityModel {
  double bandwidth = 0.1;
  Kernel kernel = Kernel::kGaussian;
  int dim = 0;
  std::vector<double> norm_mean;  // per dimension
  std::vector<double> norm_std;   // per dimension, each >= kSigmaMin
  std::vector<double> points;     // unique z-scored points, row-major
  std::vector<double> weights;    // multiplicity per unique point
  std::size_t fitted_count = 0;   // total samples in the mixture (sum of weights)

  std::size_t unique_count() const { return weights.size(); }
};

/// Fits a KDE to `count` samples of dimension `dim` stored row-major in
/// `samples`. Normalization statistics are the per-dimension sample mean
/// and population standard deviation (clamped to kSigmaMin); fitted points
/// are the z-scored samples, subsampled uniformly at random (with
/// replacement) to kFitSampleCap when there are more.
/// Throws std::invalid_argument on an empty sample set.
DensityModel fit_kde(std::span<const double> samples, std::size_t count,
                     int dim, double bandwidth, Kernel kernel, Rng& rng);

/// Convenience overload validating that all sample vectors share one
/// dimension (throws std::invalid_argument otherwise).
DensityModel fit_kde(const std::vector<GoalVec>& samples, double bandwidth,
                     Kernel kernel, Rng& rng);

/// Log-density (nats, normalized space) of the mixture at a raw-space query
/// point; the query is z-scored with the model's statistics. Computed with
/// log-sum-exp, so the result is finite for any finite query. Throws
/// std::invalid_argument on non-finite input.
double log_density(const DensityModel& model, std::span<const double> point);
double log_density(const DensityModel& model, const GoalVec& point);

/// Batch log-density for `n` row-major query points. The OpenMP variant
/// parallelizes over queries; each output element is produced by exactly
/// the serial per-point kernel, so results are bit-identical to
/// log_density_batch_serial at any thread count.
void log_density_batch(const DensityModel& model,
                       std::span<const double> points, std::size_t n,
                       std::span<double> out);

/// Serial reference for log_density_batch.
void log_density_batch_serial(const DensityModel& model,
                              std::span<const double> points, std::size_t n,
                              std::span<double> out);

/// Monte-Carlo plug-in entropy: -mean log-density over `eval_samples`
/// (row-major, `n` points drawn from the buffer the model was fit to).
/// Throws std::invalid_argument when n == 0.
double estimate_entropy(const DensityModel& model,
                        std::span<const double> eval_samples, std::size_t n);
double estimate_entropy(const DensityModel& model,
                        const std::vector<GoalVec>& eval_samples);

/// Monte-Carlo estimate of D_KL(p_dg || p_ag), clamped to [0, kKlMax]:
/// mean over n_samples draws g ~ desired_sampler of
/// desired_log_density(g) - log_density(ag_model, g).
double estimate_kl(const DensityModel& ag_model,
                   const std::function<GoalVec(Rng&)>& desired_sampler,
                   const std::function<double(const GoalVec&)>& desired_log_density,
                   int n_samples, Rng& rng);

}  // namespace megalab
