#include "megalab/grid_maze.hpp"

#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace megalab {

namespace {

// 10x10 PointMaze analog. One winding route from the bottom-left start to
// the 2x2 top-right desired region (shortest path 34 steps), with long
// dead-end corridors off the route. An untrained greedy policy (all "up")
// parks at the top-left and never reaches the region.
constexpr const char* kSpiral10 =
    "......#.GG\n"
    "...#..#.GG\n"
    ".#.#.##..#\n"
    ".#.#.##.##\n"
    ".#.#.##.##\n"
    ".#.#.##.##\n"
    ".#.#.##.##\n"
    ".#.#.##.##\n"
    ".#.#..#..#\n"
    "S#.#......\n";

// 20x20 AntMaze analog: a 3-cell-wide U. Up the left arm, across the top,
// down the right arm to the desired region at the bottom right.
std::string ucorridor_text() {
  const int n = 20;
  std::string text;
  for (int y = n - 1; y >= 0; --y) {
    for (int x = 0; x < n; ++x) {
      const bool left_arm = x <= 2;
      const bool right_arm = x >= 17;
      const bool top = y >= 17;
      char c = (left_arm || right_arm || top) ? '.' : '#';
      if (x == 0 && y == 0) c = 'S';
      if ((x == 17 || x == 18) && (y == 0 || y == 1)) c = 'G';
      text.push_back(c);
    }
    text.push_back('\n');
  }
  return text;
}

}  // namespace

GridMaze GridMaze::from_text(const std::string& text, int horizon,
                             std::string name) {
  if (horizon <= 0) throw std::invalid_argument("GridMaze: nonpositive horizon");
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("GridMaze: empty layout");

  GridMaze maze;
  maze.name_ = std::move(name);
  maze.horizon_ = horizon;
  maze.height_ = static_cast<int>(rows.size());
  maze.width_ = static_cast<int>(rows.front().size());
  maze.blocked_.assign(
      static_cast<std::size_t>(maze.width_) * maze.height_, 0);

  bool have_start = false;
  for (int r = 0; r < maze.height_; ++r) {
    const std::string& row = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != maze.width_)
      throw std::invalid_argument("GridMaze: ragged layout rows");
    const int y = maze.height_ - 1 - r;  // first line is the top row
    for (int x = 0; x < maze.width_; ++x) {
      const Cell c{x, y};
      switch (row[static_cast<std::size_t>(x)]) {
        case '.':
          break;
        case '#':
          maze.blocked_[static_cast<std::size_t>(maze.cell_id(c))] = 1;
          break;
        case 'S':
          if (have_start)
            throw std::invalid_argument("GridMaze: multiple start cells");
          maze.start_ = c;
          have_start = true;
          break;
        case 'G':
          maze.desired_.push_back(c);
          break;
        default:
          throw std::invalid_argument(
              std::string("GridMaze: unknown layout character '") +
              row[static_cast<std::size_t>(x)] + "'");
      }
    }
  }
  if (!have_start) throw std::invalid_argument("GridMaze: no start cell");
  if (maze.desired_.empty())
    throw std::invalid_argument("GridMaze: no desired-region cell");

  // The desired region must be reachable from the start.
  std::vector<std::uint8_t> seen(maze.blocked_.size(), 0);
  std::queue<Cell> frontier;
  frontier.push(maze.start_);
  seen[static_cast<std::size_t>(maze.cell_id(maze.start_))] = 1;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop();
    for (MazeAction a :
         {MazeAction::kUp, MazeAction::kDown, MazeAction::kLeft,
          MazeAction::kRight}) {
      const Cell n = maze.step(c, a);
      auto& mark = seen[static_cast<std::size_t>(maze.cell_id(n))];
      if (!mark) {
        mark = 1;
        frontier.push(n);
      }
    }
  }
  for (const Cell g : maze.desired_) {
    if (!seen[static_cast<std::size_t>(maze.cell_id(g))])
      throw std::invalid_argument("GridMaze: desired cell unreachable");
  }
  return maze;
}

GridMaze GridMaze::by_name_or_path(const std::string& id) {
  if (id == "spiral10") {
    GridMaze m = from_text(kSpiral10, 50, "spiral10");
    m.recommended_gamma_ = 0.98;
    m.recommended_steps_ = 200000;
    return m;
  }
  if (id == "ucorridor") {
    GridMaze m = from_text(ucorridor_text(), 150, "ucorridor");
    m.recommended_gamma_ = 0.99;
    m.recommended_steps_ = 600000;
    return m;
  }
  std::ifstream in(id);
  if (!in)
    throw std::invalid_argument("GridMaze: unknown environment '" + id +
                                "' (not a stock layout or readable file)");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), 50, id);
}

Cell GridMaze::step(Cell from, MazeAction action) const {
  Cell to = from;
  switch (action) {
    case MazeAction::kUp:
      to.y += 1;
      break;
    case MazeAction::kDown:
      to.y -= 1;
      break;
    case MazeAction::kLeft:
      to.x -= 1;
      break;
    case MazeAction::kRight:
      to.x += 1;
      break;
    case MazeAction::kStay:
      return from;
  }
  if (!in_bounds(to) || blocked(to)) return from;
  return to;
}

std::pair<Cell, int> GridMaze::reset(Rng& rng) const {
  const Cell goal = desired_[rng.index(desired_.size())];
  return {start_, cell_id(goal)};
}

}  // namespace megalab
