#pragma once

#include "cogrip/actions.hpp"
#include "cogrip/board.hpp"

namespace cogrip {

struct GuideState {
  int threshold = 1;  // R
  int last_fire_step = 0;
  Coord pos_at_last_fire;
  // Step at which the current gripper position was first observed.
  int arrived_step = 0;
  Coord last_seen;
  // Alternation toggles, one per rule with two productions.
  bool over_target_alt = false;
  bool over_other_alt = false;
  bool wait_alt = false;
  bool farther_alt = false;
  PreferenceOrder order = PreferenceOrder::PCS;
};

// Rule-based guide with ground-truth access to the board. Rules in priority
// order:
//   t = 0              -> reference
//   over the target    -> confirm | take
//   over another piece -> decline | go(dir)
//   no move for R steps since the last utterance -> reference | go(dir)
//   R steps since the last utterance and moved   -> confirm if closer to the
//                                                   target, else decline | go(dir)
//   otherwise          -> silence
// "a | b" alternates between a and b on successive firings of that rule.
// References prefer position when the gripper is outside the target's area
// and color, then shape, inside it.
class HeuristicGuide {
 public:
  explicit HeuristicGuide(int threshold);

  GuideIntent act(const Board& board, int target_id, Coord gripper, int t);

  const GuideState& state() const { return state_; }

 private:
  GuideState state_;
};

// Direction along the axis of largest offset to the nearest target tile;
// ties go horizontal.
Direction direction_to(const Board& board, int target_id, Coord from);

// Euclidean distance to the nearest tile of the piece.
double distance_to_piece(const Board& board, int piece_id, Coord from);

}  // namespace cogrip
