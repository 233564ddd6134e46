#pragma once

#include <cmath>
#include <vector>

namespace megalab {

/// A point in goal space. Dimension is environment-defined (2 for grid
/// mazes, 1 for the toy chain).
using GoalVec = std::vector<double>;

/// Euclidean distance between two goal vectors of equal dimension.
inline double goal_distance(const GoalVec& a, const GoalVec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace megalab
