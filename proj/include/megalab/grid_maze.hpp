#pragma once

#include <string>
#include <vector>

#include "megalab/goal.hpp"
#include "megalab/rng.hpp"

namespace megalab {

/// Actions on the grid. Ordering fixes greedy tie-breaking: an untrained
/// table always picks kUp.
enum class MazeAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStay = 4 };
inline constexpr int kNumMazeActions = 5;

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

/// Deterministic discrete wall maze. States and goals are (x, y) cells; the
/// achieved goal of a state is its own cell. Wall cells block all four of
/// their edges. x runs left to right, y bottom to top.
///
/// Layout text format: one row per line, top row first. Characters:
///   '.' open cell, '#' wall cell, 'S' start (exactly one),
///   'G' desired-region cell (at least one).
class GridMaze {
 public:
  /// Parses a layout. Throws std::invalid_argument on malformed input.
  static GridMaze from_text(const std::string& text, int horizon,
                            std::string name = "custom");

  /// Resolves a stock layout name ("spiral10", "ucorridor") or a path to a
  /// layout file.
  static GridMaze by_name_or_path(const std::string& id);

  const std::string& name() const { return name_; }
  int width() const { return width_; }
  int height() const { return height_; }
  int horizon() const { return horizon_; }
  int num_cells() const { return width_ * height_; }
  int num_actions() const { return kNumMazeActions; }
  Cell start() const { return start_; }
  const std::vector<Cell>& desired_region() const { return desired_; }

  /// Success tolerance: strict Euclidean < 0.5 makes success equivalent to
  /// exact cell match.
  double success_tolerance() const { return 0.5; }

  /// Discount that propagates value across this layout's path lengths.
  double recommended_gamma() const { return recommended_gamma_; }
  long recommended_steps() const { return recommended_steps_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool blocked(Cell c) const {
    return blocked_[static_cast<std::size_t>(c.y) * width_ + c.x] != 0;
  }

  int cell_id(Cell c) const { return c.y * width_ + c.x; }
  Cell cell(int id) const { return Cell{id % width_, id / width_}; }
  GoalVec goal_vec(int id) const {
    const Cell c = cell(id);
    return GoalVec{static_cast<double>(c.x), static_cast<double>(c.y)};
  }

  /// One deterministic step. Moves into a wall cell or out of bounds leave
  /// the state unchanged; kStay always does.
  Cell step(Cell from, MazeAction action) const;

  /// Episode start: the fixed start cell plus a desired goal drawn
  /// uniformly from the desired region.
  std::pair<Cell, int> reset(Rng& rng) const;

 private:
  GridMaze() = default;

  std::string name_;
  int width_ = 0, height_ = 0, horizon_ = 0;
  std::vector<std::uint8_t> blocked_;
  Cell start_;
  std::vector<Cell> desired_;
  double recommended_gamma_ = 0.98;
  long recommended_steps_ = 200000;
};

}  // namespace megalab
