#include "cogrip/board.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cogrip/error.hpp"

namespace cogrip {

namespace {

// Area code indexed by [row third][column third].
constexpr std::array<std::array<Area, 3>, 3> kAreaGrid = {{
    {Area::TopLeft, Area::TopCenter, Area::TopRight},
    {Area::LeftCenter, Area::Center, Area::RightCenter},
    {Area::BottomLeft, Area::BottomCenter, Area::BottomRight},
}};

std::string coord_text(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

}  // namespace

bool is_supported_board_size(int size) {
  return std::find(kBoardSizes.begin(), kBoardSizes.end(), size) != kBoardSizes.end();
}

std::string_view name(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

Coord offset(Direction d) {
  switch (d) {
    case Direction::Left: return {-1, 0};
    case Direction::Right: return {1, 0};
    case Direction::Up: return {0, -1};
    case Direction::Down: return {0, 1};
  }
  return {};
}

Area area_of(Coord c, int board_size) {
  if (c.x < 0 || c.y < 0 || c.x >= board_size || c.y >= board_size) {
    throw std::out_of_range("coordinate " + coord_text(c) + " outside board of size " +
                            std::to_string(board_size));
  }
  const int third = board_size / 3;
  return kAreaGrid[static_cast<std::size_t>(c.y / third)][static_cast<std::size_t>(c.x / third)];
}

AreaRect area_rect(Area area, int board_size) {
  const int third = board_size / 3;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      if (kAreaGrid[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] == area) {
        return {col * third, row * third, col * third + third - 1, row * third + third - 1};
      }
    }
  }
  throw std::invalid_argument("unknown area");
}

double euclidean(Coord a, Coord b) { return std::hypot(a.x - b.x, a.y - b.y); }

void validate_piece(const PlacedPiece& piece, int board_size) {
  const std::string who = "piece " + std::to_string(piece.id);
  if (piece.id <= 0) throw ValidationError(who + ": id must be positive");
  for (const Coord& t : piece.tiles) {
    if (t.x < 0 || t.y < 0 || t.x >= board_size || t.y >= board_size) {
      throw ValidationError(who + ": tile " + coord_text(t) + " outside the board");
    }
    if (area_of(t, board_size) != piece.symbolic.area) {
      throw ValidationError(who + ": tile " + coord_text(t) + " outside area " +
                            std::string(name(piece.symbolic.area)));
    }
  }
  if (!edge_connected(piece.tiles)) throw ValidationError(who + ": tiles are not 5 connected cells");
  if (!matches_shape(piece.tiles, piece.symbolic.shape)) {
    throw ValidationError(who + ": tiles do not form a " + std::string(name(piece.symbolic.shape)));
  }
}

Board::Board(int size, std::vector<PlacedPiece> pieces)
    : size_(size), pieces_(std::move(pieces)), tiles_(static_cast<std::size_t>(size * size), 0) {
  if (!is_supported_board_size(size)) {
    throw ValidationError("unsupported board size " + std::to_string(size));
  }
  for (const PlacedPiece& p : pieces_) {
    validate_piece(p, size_);
    for (const Coord& t : p.tiles) {
      int& slot = tiles_[static_cast<std::size_t>(t.y * size_ + t.x)];
      if (slot != 0) {
        throw ValidationError("pieces " + std::to_string(slot) + " and " + std::to_string(p.id) +
                              " overlap at " + coord_text(t));
      }
      slot = p.id;
    }
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      if (pieces_[i].id == pieces_[j].id) {
        throw ValidationError("duplicate piece id " + std::to_string(pieces_[i].id));
      }
    }
  }
}

int Board::piece_at(Coord c) const {
  if (!contains(c)) throw std::out_of_range("coordinate " + coord_text(c) + " outside board");
  return tiles_[static_cast<std::size_t>(c.y * size_ + c.x)];
}

const PlacedPiece& Board::piece(int id) const {
  for (const PlacedPiece& p : pieces_) {
    if (p.id == id) return p;
  }
  throw LookupError("no piece with id " + std::to_string(id));
}

bool Board::has_piece(int id) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [id](const PlacedPiece& p) { return p.id == id; });
}

Gripper move_gripper(Gripper g, Direction d, int board_size) {
  const Coord next = g.position + offset(d);
  if (next.x < 0 || next.y < 0 || next.x >= board_size || next.y >= board_size) return g;
  return {next};
}

SymbolicView partial_view(const Board& board, Coord center) {
  SymbolicView view;
  view.center = center;
  for (int row = 0; row < SymbolicView::kSide; ++row) {
    for (int col = 0; col < SymbolicView::kSide; ++col) {
      const Coord w = view.world(col, row);
      SymbolicView::Cell& cell = view.at(col, row);
      if (!board.contains(w)) continue;
      const int id = board.piece_at(w);
      if (id == 0) {
        cell = {kEmptyCode, kEmptyCode, kEmptyCode};
      } else {
        const PlacedPiece& p = board.piece(id);
        cell = {code(p.symbolic.color), code(p.symbolic.shape), id};
      }
    }
  }
  return view;
}

std::size_t Overview::count(int channel) const {
  std::size_t n = 0;
  for (std::size_t i = static_cast<std::size_t>(channel); i < bits.size(); i += kChannels) n += bits[i];
  return n;
}

Overview overview_masks(const Board& board, Gripper g, Role role, int target_id) {
  const int m = board.size();
  Overview ov{m, std::vector<std::uint8_t>(static_cast<std::size_t>(m * m * Overview::kChannels), 0)};
  auto set = [&](Coord c, int channel) {
    ov.bits[static_cast<std::size_t>((c.y * m + c.x) * Overview::kChannels + channel)] = 1;
  };

  const PlacedPiece* target = role == Role::Guide ? &board.piece(target_id) : nullptr;
  const Area area = target ? target->symbolic.area : area_of(g.position, m);
  const AreaRect rect = area_rect(area, m);

  for (int y = 0; y < m; ++y) {
    for (int x = 0; x < m; ++x) {
      const Coord c{x, y};
      set(c, 0);
      const int id = board.piece_at(c);
      if (role == Role::Guide ? id == target_id : id != 0) set(c, 2);
      if (rect.contains(c)) set(c, 3);
    }
  }
  set(g.position, 1);
  return ov;
}

}  // namespace cogrip
