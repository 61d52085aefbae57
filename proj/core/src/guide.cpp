#include "cogrip/guide.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace cogrip {

namespace {

Coord nearest_tile(const Board& board, int piece_id, Coord from) {
  const PlacedPiece& piece = board.piece(piece_id);
  return *std::min_element(piece.tiles.begin(), piece.tiles.end(), [&](Coord a, Coord b) {
    return euclidean(a, from) < euclidean(b, from);
  });
}

}  // namespace

double distance_to_piece(const Board& board, int piece_id, Coord from) {
  return euclidean(nearest_tile(board, piece_id, from), from);
}

Direction direction_to(const Board& board, int target_id, Coord from) {
  const Coord d = nearest_tile(board, target_id, from) - from;
  if (std::abs(d.x) >= std::abs(d.y)) return d.x < 0 ? Direction::Left : Direction::Right;
  return d.y < 0 ? Direction::Up : Direction::Down;
}

HeuristicGuide::HeuristicGuide(int threshold) {
  if (threshold < 1) throw std::invalid_argument("guide threshold R must be >= 1");
  state_.threshold = threshold;
}

GuideIntent HeuristicGuide::act(const Board& board, int target_id, Coord gripper, int t) {
  GuideState& s = state_;
  const int m = board.size();
  const Area target_area = board.piece(target_id).symbolic.area;
  s.order = area_of(gripper, m) == target_area ? PreferenceOrder::CSP : PreferenceOrder::PCS;

  if (t == 0 || gripper != s.last_seen) {
    s.arrived_step = t;
    s.last_seen = gripper;
  }

  auto fire = [&](GuideIntent intent) {
    s.last_fire_step = t;
    s.pos_at_last_fire = gripper;
    return intent;
  };
  auto alternate = [&](bool& toggle, GuideIntent first, GuideIntent second) {
    const GuideIntent chosen = toggle ? second : first;
    toggle = !toggle;
    return fire(chosen);
  };

  if (t == 0) return fire(GuideIntent::reference(s.order));

  const Direction dir = direction_to(board, target_id, gripper);
  const int under = board.piece_at(gripper);
  if (under == target_id) return alternate(s.over_target_alt, GuideIntent::confirm(), GuideIntent::take());
  if (under != 0) return alternate(s.over_other_alt, GuideIntent::decline(), GuideIntent::go(dir));

  const int since_fire = t - s.last_fire_step;
  const int still_for = t - std::max(s.last_fire_step, s.arrived_step);
  if (still_for >= s.threshold) {
    return alternate(s.wait_alt, GuideIntent::reference(s.order), GuideIntent::go(dir));
  }
  if (since_fire >= s.threshold && gripper != s.pos_at_last_fire) {
    const double before = distance_to_piece(board, target_id, s.pos_at_last_fire);
    const double now = distance_to_piece(board, target_id, gripper);
    if (now < before) return fire(GuideIntent::confirm());
    return alternate(s.farther_alt, GuideIntent::decline(), GuideIntent::go(dir));
  }
  return GuideIntent::silence();
}

}  // namespace cogrip
