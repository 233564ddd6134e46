#include <chrono>
#include <cstdio>
#include <vector>

#include "megalab/density.hpp"
#include "megalab/rng.hpp"

// Times the OpenMP batch density kernel against the serial reference on two
// workloads: continuous fitted points (no duplicate collapsing) and
// grid-valued fitted points (heavy collapsing). Verifies the outputs are
// bit-identical.

namespace {

using namespace megalab;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct Workload {
  const char* name;
  DensityModel model;
  std::vector<double> queries;
  std::size_t n_queries;
};

Workload continuous_workload(Rng& rng) {
  const std::size_t n_fit = 10000, n_q = 20000;
  std::vector<double> fit(n_fit * 2), q(n_q * 2);
  for (double& v : fit) v = rng.normal();
  for (double& v : q) v = rng.normal();
  return {"continuous 2-D, 10k fitted, 20k queries",
          fit_kde(fit, n_fit, 2, 0.1, Kernel::kGaussian, rng), std::move(q),
          n_q};
}

Workload grid_workload(Rng& rng) {
  const std::size_t n_fit = 200000, n_q = 20000;
  std::vector<double> fit(n_fit * 2), q(n_q * 2);
  for (double& v : fit) v = static_cast<double>(rng.index(20));
  for (double& v : q) v = static_cast<double>(rng.index(20));
  return {"20x20 grid cells, 200k samples, 20k queries",
          fit_kde(fit, n_fit, 2, 0.1, Kernel::kGaussian, rng), std::move(q),
          n_q};
}

void run(const Workload& w) {
  std::vector<double> serial(w.n_queries), parallel(w.n_queries);

  auto t0 = Clock::now();
  log_density_batch_serial(w.model, w.queries, w.n_queries, serial);
  const double t_serial = ms_since(t0);

  t0 = Clock::now();
  log_density_batch(w.model, w.queries, w.n_queries, parallel);
  const double t_parallel = ms_since(t0);

  bool identical = true;
  for (std::size_t i = 0; i < w.n_queries; ++i)
    identical = identical && serial[i] == parallel[i];

  std::printf("%-45s unique=%zu serial=%8.2f ms  omp=%8.2f ms  speedup=%.2fx  %s\n",
              w.name, w.model.unique_count(), t_serial, t_parallel,
              t_serial / t_parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  Rng rng(7);
  run(continuous_workload(rng));
  run(grid_workload(rng));
  return 0;
}
