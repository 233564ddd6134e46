#include "megalab/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace megalab {

std::string format_metric(double v) {
  char buf[40];
  // %.17g round-trips any double; trim to %g-style brevity when lossless.
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v || (std::isnan(back) && std::isnan(v))) break;
  }
  return buf;
}

MetricWriter::MetricWriter(const std::string& path) {
  file_ = std::fopen(path.c_str(), "w");
  if (file_ == nullptr)
    throw std::runtime_error("metrics: cannot open sink '" + path + "'");
}

MetricWriter::~MetricWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void MetricWriter::write(const MetricRecord& r) {
  if (!wrote_header_) {
    std::fputs("step,test_success,entropy,alpha,intrinsic_success,cutoff\n",
               file_);
    wrote_header_ = true;
  }
  const std::string alpha = r.alpha ? format_metric(*r.alpha) : "";
  std::fprintf(file_, "%ld,%s,%s,%s,%s,%s\n", r.step,
               format_metric(r.test_success).c_str(),
               format_metric(r.entropy).c_str(), alpha.c_str(),
               format_metric(r.intrinsic_success).c_str(),
               format_metric(r.cutoff).c_str());
  std::fflush(file_);
}

ToyWriter::ToyWriter(const std::string& path) {
  file_ = std::fopen(path.c_str(), "w");
  if (file_ == nullptr)
    throw std::runtime_error("metrics: cannot open toy sink '" + path + "'");
}

ToyWriter::~ToyWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void ToyWriter::write_row(long iteration, const std::string& policy,
                          double mean_entropy, double std_entropy,
                          double mean_support, double std_support) {
  if (!wrote_header_) {
    std::fputs(
        "iteration,policy,mean_entropy,std_entropy,mean_support,std_support\n",
        file_);
    wrote_header_ = true;
  }
  std::fprintf(file_, "%ld,%s,%s,%s,%s,%s\n", iteration, policy.c_str(),
               format_metric(mean_entropy).c_str(),
               format_metric(std_entropy).c_str(),
               format_metric(mean_support).c_str(),
               format_metric(std_support).c_str());
  std::fflush(file_);
}

}  // namespace megalab
