#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace megalab {

/// One evaluation-interval row of the training metric stream.
struct MetricRecord {
  long step = 0;
  double test_success = 0.0;
  double entropy = 0.0;
  std::optional<double> alpha;  // absent for non-OMEGA strategies
  double intrinsic_success = 0.0;
  double cutoff = 0.0;
};

/// CSV sink for MetricRecords: header on first write, one flushed row per
/// record. Formatting is fixed so identical runs produce identical bytes.
class MetricWriter {
 public:
  explicit MetricWriter(const std::string& path);
  ~MetricWriter();
  MetricWriter(const MetricWriter&) = delete;
  MetricWriter& operator=(const MetricWriter&) = delete;

  void write(const MetricRecord& record);

 private:
  std::FILE* file_ = nullptr;
  bool wrote_header_ = false;
};

/// Formats a double the way the CSV sinks do (shortest round-trippable
/// representation via %.17g trimmed, stable across runs).
std::string format_metric(double v);

/// CSV sink for toy-experiment curves:
/// iteration,policy,mean_entropy,std_entropy,mean_support,std_support.
class ToyWriter {
 public:
  explicit ToyWriter(const std::string& path);
  ~ToyWriter();
  ToyWriter(const ToyWriter&) = delete;
  ToyWriter& operator=(const ToyWriter&) = delete;

  void write_row(long iteration, const std::string& policy,
                 double mean_entropy, double std_entropy, double mean_support,
                 double std_support);

 private:
  std::FILE* file_ = nullptr;
  bool wrote_header_ = false;
};

}  // namespace megalab
