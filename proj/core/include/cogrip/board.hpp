#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cogrip/pentomino.hpp"
#include "cogrip/symbols.hpp"

namespace cogrip {

inline constexpr std::array<int, 3> kBoardSizes = {12, 21, 27};

bool is_supported_board_size(int size);

enum class Direction : std::uint8_t { Left, Right, Up, Down };
inline constexpr std::array<Direction, 4> kDirections = {Direction::Left, Direction::Right,
                                                         Direction::Up, Direction::Down};

std::string_view name(Direction d);
Coord offset(Direction d);

enum class Role : std::uint8_t { Guide, Follower };

// Inclusive cell rectangle covered by a positional area.
struct AreaRect {
  int x0, y0, x1, y1;
  bool contains(Coord c) const { return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1; }
  Coord center() const { return {(x0 + x1 + 1) / 2, (y0 + y1 + 1) / 2}; }
};

// The board is split into equal thirds along both axes.
// Throws std::out_of_range for coordinates outside the board.
Area area_of(Coord c, int board_size);
AreaRect area_rect(Area area, int board_size);

double euclidean(Coord a, Coord b);

struct PlacedPiece {
  int id = 0;
  SymbolicPiece symbolic;
  Cells tiles;
};

// Immutable board with a tile index. Construction validates every piece:
// 5 tiles forming the declared shape, inside the board and the declared area,
// and no overlaps. Violations throw ValidationError.
class Board {
 public:
  Board(int size, std::vector<PlacedPiece> pieces);

  int size() const { return size_; }
  std::span<const PlacedPiece> pieces() const { return pieces_; }

  bool contains(Coord c) const { return c.x >= 0 && c.y >= 0 && c.x < size_ && c.y < size_; }

  // Piece id occupying the tile, 0 when empty. Throws std::out_of_range.
  int piece_at(Coord c) const;

  // Throws LookupError for unknown ids.
  const PlacedPiece& piece(int id) const;
  bool has_piece(int id) const;

 private:
  int size_;
  std::vector<PlacedPiece> pieces_;
  std::vector<int> tiles_;
};

// Checks a single piece against a board size. Throws ValidationError.
void validate_piece(const PlacedPiece& piece, int board_size);

struct Gripper {
  Coord position;
  auto operator<=>(const Gripper&) const = default;
};

// Moves clamp at the board boundary.
Gripper move_gripper(Gripper g, Direction d, int board_size);

// Symbolic 7x7 window centered on a coordinate. Each cell holds color, shape
// and piece-id channels; 0 means out of world and 1 means an empty tile
// (piece-id then also holds 0 or 1 respectively). Piece ids start at 1, so
// occupancy is read from the shape channel, never from the id.
struct SymbolicView {
  static constexpr int kRadius = 3;
  static constexpr int kSide = 2 * kRadius + 1;

  struct Cell {
    int color = kOutOfWorldCode;
    int shape = kOutOfWorldCode;
    int piece_id = kOutOfWorldCode;
    auto operator<=>(const Cell&) const = default;
  };

  Coord center;
  std::array<Cell, kSide * kSide> cells{};

  // Window-local coordinates: (0,0) is the top-left, (3,3) the center.
  const Cell& at(int col, int row) const { return cells[static_cast<std::size_t>(row * kSide + col)]; }
  Cell& at(int col, int row) { return cells[static_cast<std::size_t>(row * kSide + col)]; }

  bool occupied(int col, int row) const { return at(col, row).shape > kEmptyCode; }
  bool in_world(int col, int row) const { return at(col, row).color != kOutOfWorldCode; }
  Coord world(int col, int row) const { return {center.x + col - kRadius, center.y + row - kRadius}; }
};

SymbolicView partial_view(const Board& board, Coord center);

// Binary overview channels laid out [y][x][channel].
struct Overview {
  static constexpr int kChannels = 4;
  int size = 0;
  std::vector<std::uint8_t> bits;

  std::uint8_t at(int x, int y, int channel) const {
    return bits[static_cast<std::size_t>((y * size + x) * kChannels + channel)];
  }
  std::size_t count(int channel) const;
};

// Guide: {board, gripper, target piece, target area}.
// Follower: {board, gripper, all pieces, current area}.
// A guide overview with an unknown target id throws LookupError.
Overview overview_masks(const Board& board, Gripper g, Role role, int target_id);

}  // namespace cogrip
