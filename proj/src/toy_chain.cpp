#include "megalab/toy_chain.hpp"

#include <stdexcept>
#include <string>

namespace megalab {

namespace {
constexpr double kKernelWeights[5] = {0.1, 0.2, 0.4, 0.2, 0.1};  // offsets -2..+2
}

DiscretePmf ToyChain::kernel_row(int g_hat) const {
  if (g_hat < 0 || g_hat >= universe())
    throw std::out_of_range("ToyChain: goal " + std::to_string(g_hat) +
                            " outside universe");
  std::vector<double> weights(static_cast<std::size_t>(universe()), 0.0);
  for (int off = -2; off <= 2; ++off) {
    const int g = g_hat + off;
    if (g < 0 || g >= universe()) continue;  // truncate at the boundary
    weights[static_cast<std::size_t>(g)] = kKernelWeights[off + 2];
  }
  return DiscretePmf::from_weights(weights);  // renormalizes
}

ConditionalModel ToyChain::conditional() const {
  ConditionalModel model;
  for (int g = 0; g < universe(); ++g) model.set_row(g, kernel_row(g));
  return model;
}

int ToyChain::sample(int g_hat, Rng& rng) const {
  const DiscretePmf row = kernel_row(g_hat);
  const double u = rng.uniform();
  double acc = 0.0;
  for (int g = 0; g < row.size(); ++g) {
    acc += row(g);
    if (u < acc) return g;
  }
  return row.size() - 1;  // u landed in the final mass (rounding guard)
}

}  // namespace megalab
