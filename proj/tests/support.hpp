#pragma once

// Builders shared by the unit and acceptance tests.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cogrip/board.hpp"
#include "cogrip/pentomino.hpp"
#include "cogrip/taskgen.hpp"

namespace cogrip::test {

inline PlacedPiece place(int id, Shape shape, Color color, Coord anchor, int rotation, int board_size) {
  PlacedPiece p;
  p.id = id;
  const Cells cells = rotated_cells(shape, rotation);
  for (std::size_t i = 0; i < cells.size(); ++i) p.tiles[i] = anchor + cells[i];
  p.symbolic = {shape, color, area_of(p.tiles[0], board_size)};
  return p;
}

// A 12x12 task from explicit pieces; the first piece is the target.
inline TaskInstance make_task(std::vector<PlacedPiece> pieces, int template_id = 7, int id = 1) {
  TaskInstance t{id, Board(12, std::move(pieces)), 1, max_steps(12), template_id, 0};
  const Area target_area = t.target().symbolic.area;
  for (const PlacedPiece& p : t.board.pieces()) {
    if (p.id != t.target_id && p.symbolic.area == target_area) ++t.dta;
  }
  return t;
}

// Target: blue T in the top-right area with its stem tip at (9,2). Three
// distractors in other areas keep the piece count legal for M = 12.
inline TaskInstance corner_task() {
  return make_task({
      place(1, Shape::T, Color::Blue, {8, 0}, 0, 12),    // (8..10,0), (9,1), (9,2)
      place(2, Shape::P, Color::Red, {0, 0}, 0, 12),     // top left
      place(3, Shape::X, Color::Green, {4, 8}, 0, 12),   // bottom center
      place(4, Shape::W, Color::Yellow, {0, 8}, 0, 12),  // bottom left
  });
}

// FNV-1a, a stable hash for pinning golden byte streams.
inline std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace cogrip::test

#include "cogrip/reg.hpp"

namespace cogrip::test {

// Brute-force IA oracle: tries all 8 property subsets and keeps the one that
// is consistent with the order, i.e. each property is in the subset exactly
// when it rules out a distractor that the earlier chosen properties did not.
// nullopt when no subset or more than one subset qualifies.
inline std::optional<PropertySet> brute_force_selection(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors,
                                         PreferenceOrder order) {
  const auto props = properties(order);
  std::optional<PropertySet> found;
  for (std::uint8_t mask = 0; mask < 8; ++mask) {
    const PropertySet candidate(mask);
    bool consistent = true;
    for (std::size_t k = 0; k < props.size() && consistent; ++k) {
      bool excludes_new = false;
      for (const SymbolicPiece& d : distractors) {
        bool survived = true;
        for (std::size_t j = 0; j < k; ++j) {
          if (candidate.has(props[j]) && !has_property_value(d, target, props[j])) survived = false;
        }
        if (survived && !has_property_value(d, target, props[k])) excludes_new = true;
      }
      consistent = candidate.has(props[k]) == excludes_new;
    }
    if (consistent) {
      if (found) return std::nullopt;
      found = candidate;
    }
  }
  return found;
}

}  // namespace cogrip::test
