#pragma once

#include "megalab/entropy_math.hpp"
#include "megalab/rng.hpp"

namespace megalab {

/// Discrete goal chain over {0, ..., 2n}. Conditioning behaviour on goal g
/// yields achieved goals from a local kernel: weight 0.4 at g, 0.2 at g+-1,
/// 0.1 at g+-2, truncated at the boundary and renormalized.
struct ToyChain {
  int n = 50;

  int universe() const { return 2 * n + 1; }

  /// The (truncated, renormalized) conditional row at behavioural goal
  /// g_hat. Throws std::out_of_range for goals outside the universe.
  DiscretePmf kernel_row(int g_hat) const;

  /// All rows assembled into a ConditionalModel (the toy's exact q(g'|g)).
  ConditionalModel conditional() const;

  /// One achieved-goal draw from the kernel row at g_hat.
  int sample(int g_hat, Rng& rng) const;
};

}  // namespace megalab
