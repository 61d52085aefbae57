#pragma once

#include <array>
#include <compare>
#include <span>

#include "cogrip/symbols.hpp"

namespace cogrip {

// Board coordinate: x is the column (grows right), y is the row (grows down).
struct Coord {
  int x = 0;
  int y = 0;

  auto operator<=>(const Coord&) const = default;
  Coord operator+(Coord o) const { return {x + o.x, y + o.y}; }
  Coord operator-(Coord o) const { return {x - o.x, y - o.y}; }
};

using Cells = std::array<Coord, 5>;

inline constexpr int kRotations = 4;

// Canonical template of a pentomino, normalized so min x = min y = 0 and the
// cells are sorted.
const Cells& canonical_cells(Shape shape);

// Template rotated by `quarter_turns` * 90 degrees clockwise, normalized.
Cells rotated_cells(Shape shape, int quarter_turns);

// Translates cells so the minimum x/y is 0 and sorts them.
Cells normalize(Cells cells);

// True iff the 5 cells are a translation of `shape` under one of its rotations.
bool matches_shape(std::span<const Coord, 5> cells, Shape shape);

// True iff the cells are pairwise distinct and edge-connected.
bool edge_connected(std::span<const Coord> cells);

}  // namespace cogrip
