#include "cogrip/pentomino.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <vector>

namespace cogrip {

namespace {

// Row strings per shape, '#' marks a tile.
Cells from_rows(std::initializer_list<const char*> rows) {
  Cells cells{};
  std::size_t n = 0;
  int y = 0;
  for (const char* row : rows) {
    for (int x = 0; row[x] != '\0'; ++x) {
      if (row[x] == '#') cells[n++] = {x, y};
    }
    ++y;
  }
  return normalize(cells);
}

const std::array<Cells, 7>& templates() {
  static const std::array<Cells, 7> table = {
      from_rows({"##", "##", "#."}),      // P
      from_rows({".#.", "###", ".#."}),   // X
      from_rows({"###", ".#.", ".#."}),   // T
      from_rows({"##.", ".#.", ".##"}),   // Z
      from_rows({"#..", "##.", ".##"}),   // W
      from_rows({"#.#", "###"}),          // U
      from_rows({".##", "##.", ".#."}),   // F
  };
  return table;
}

std::size_t index_of(Shape shape) { return static_cast<std::size_t>(code(shape) - code(Shape::P)); }

}  // namespace

Cells normalize(Cells cells) {
  int min_x = INT_MAX, min_y = INT_MAX;
  for (const Coord& c : cells) {
    min_x = std::min(min_x, c.x);
    min_y = std::min(min_y, c.y);
  }
  for (Coord& c : cells) c = {c.x - min_x, c.y - min_y};
  std::sort(cells.begin(), cells.end());
  return cells;
}

const Cells& canonical_cells(Shape shape) { return templates()[index_of(shape)]; }

Cells rotated_cells(Shape shape, int quarter_turns) {
  Cells cells = canonical_cells(shape);
  const int turns = ((quarter_turns % kRotations) + kRotations) % kRotations;
  for (int i = 0; i < turns; ++i) {
    for (Coord& c : cells) c = {-c.y, c.x};
  }
  return normalize(cells);
}

bool matches_shape(std::span<const Coord, 5> cells, Shape shape) {
  Cells given{};
  std::copy(cells.begin(), cells.end(), given.begin());
  given = normalize(given);
  for (int r = 0; r < kRotations; ++r) {
    if (rotated_cells(shape, r) == given) return true;
  }
  return false;
}

bool edge_connected(std::span<const Coord> cells) {
  if (cells.empty()) return false;
  std::vector<Coord> sorted(cells.begin(), cells.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

  std::vector<bool> seen(cells.size(), false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Coord c = cells[stack.back()];
    stack.pop_back();
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (seen[j]) continue;
      if (std::abs(cells[j].x - c.x) + std::abs(cells[j].y - c.y) == 1) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == cells.size();
}

}  // namespace cogrip
