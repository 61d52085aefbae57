#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "cogrip/actions.hpp"
#include "cogrip/board.hpp"
#include "cogrip/reg.hpp"
#include "cogrip/rng.hpp"

namespace cogrip {

inline constexpr int kMaxPlanLength = 6;

// Target properties gathered from references so far.
struct TargetDescriptor {
  std::optional<Color> color;
  std::optional<Shape> shape;
  std::optional<Area> area;

  // Fields present in `update` overwrite; absent ones are kept.
  void merge(const TargetDescriptor& update);
  bool has_appearance() const { return color || shape; }
  bool empty() const { return !color && !shape && !area; }
  bool operator==(const TargetDescriptor&) const = default;
};

struct ParsedUtterance {
  Category category = Category::Silence;
  std::optional<Direction> direction;  // go <dir>
  bool take = false;                   // take <piece> / take
  TargetDescriptor descriptor;         // reference content
  bool understood = true;              // false when the text matched no template
};

// Template grammar over intent-level surfaces ("yes ...", "not ...", "go <dir>",
// "take <piece>", "take the ...") and single word-level actions (a color,
// shape or position phrase, or "take"). Anything else is silence with
// understood = false.
ParsedUtterance parse_utterance(std::string_view surface);
Category classify(std::string_view surface);

// max(phi^i, l_min)
double confidence(int index, double phi, double l_min);

// Breadth-first shortest path over the in-world cells of the view from its
// center to (col, row); pieces are traversable. At most kMaxPlanLength moves.
std::vector<FollowerAction> plan_path(const SymbolicView& view, int col, int row);

struct FollowerConfig {
  double phi = 0.99;
  double l_min = 0.5;
};

struct PlannedAction {
  FollowerAction action = FollowerAction::Wait;
  double confidence = 1.0;
};

// Limited-horizon follower working from the partial view and its own position.
class HeuristicFollower {
 public:
  HeuristicFollower(FollowerConfig config, int board_size);

  FollowerAction act(std::string_view utterance, const SymbolicView& view, Coord gripper, Rng& rng);

  const std::deque<PlannedAction>& plan() const { return plan_; }
  const TargetDescriptor& descriptor() const { return descriptor_; }
  // Utterances that matched no template.
  std::size_t not_understood() const { return not_understood_; }

  // Replaces the plan, assigning confidences by position (first action i = 1).
  void set_plan(const std::vector<FollowerAction>& actions);

 private:
  FollowerAction on_silence(const SymbolicView& view, Coord gripper, Rng& rng);
  FollowerAction on_confirm(const SymbolicView& view, Coord gripper, Rng& rng);
  FollowerAction on_decline();
  FollowerAction on_directive(const ParsedUtterance& u, Coord gripper);
  FollowerAction on_reference(const TargetDescriptor& update, const SymbolicView& view, Coord gripper, Rng& rng);
  FollowerAction execute_next(Rng& rng);

  std::vector<FollowerAction> plan_towards(Coord from, Coord to) const;

  FollowerConfig config_;
  int board_size_;
  TargetDescriptor descriptor_;
  std::deque<PlannedAction> plan_;
  std::size_t not_understood_ = 0;
};

}  // namespace cogrip
