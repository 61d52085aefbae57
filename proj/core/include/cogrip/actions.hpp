#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cogrip/board.hpp"
#include "cogrip/reg.hpp"

namespace cogrip {

// Intent-level guide actions. Direction only matters for Go, order only for
// Reference.
struct GuideIntent {
  enum class Kind : std::uint8_t { Silence, Confirm, Decline, Go, Take, Reference };
  Kind kind = Kind::Silence;
  Direction direction = Direction::Left;
  PreferenceOrder order = PreferenceOrder::PCS;

  static GuideIntent silence() { return {}; }
  static GuideIntent confirm() { return {Kind::Confirm}; }
  static GuideIntent decline() { return {Kind::Decline}; }
  static GuideIntent go(Direction d) { return {Kind::Go, d}; }
  static GuideIntent take() { return {Kind::Take}; }
  static GuideIntent reference(PreferenceOrder o) { return {Kind::Reference, Direction::Left, o}; }

  bool operator==(const GuideIntent& o) const;
};

Category category(const GuideIntent& intent);

// 14 ids: silence, confirm, decline, left, right, up, down, take, pcs, psc, cps, csp, spc, scp.
inline constexpr int kIntentActionCount = 14;
int intent_action_id(const GuideIntent& intent);
GuideIntent intent_from_action_id(int id);  // throws LookupError
std::string action_name(const GuideIntent& intent);

// Word-level guide actions: one property value, "take", or silence.
// 24 ids: 0 silence, 1-6 colors, 7-13 shapes, 14-22 positions, 23 take.
struct WordAction {
  enum class Kind : std::uint8_t { Silence, Color, Shape, Position, Take };
  Kind kind = Kind::Silence;
  Color color = Color::Red;
  Shape shape = Shape::P;
  Area area = Area::Center;

  bool operator==(const WordAction& o) const;
};

inline constexpr int kWordActionCount = 24;
Category category(const WordAction& word);
int word_action_id(const WordAction& word);
WordAction word_from_action_id(int id);  // throws LookupError
std::string action_name(const WordAction& word);
std::string word_surface(const WordAction& word);

using GuideAction = std::variant<GuideIntent, WordAction>;
std::string action_name(const GuideAction& action);

enum class FollowerAction : std::uint8_t { Wait, Left, Right, Up, Down, Take };
inline constexpr int kFollowerActionCount = 6;
inline constexpr std::array<FollowerAction, kFollowerActionCount> kFollowerActions = {
    FollowerAction::Wait, FollowerAction::Left, FollowerAction::Right,
    FollowerAction::Up,   FollowerAction::Down, FollowerAction::Take};

int follower_action_id(FollowerAction a);
FollowerAction follower_from_action_id(int id);  // throws LookupError
std::string_view name(FollowerAction a);
std::optional<FollowerAction> parse_follower_action(std::string_view text);
FollowerAction move_action(Direction d);
std::optional<Direction> direction_of(FollowerAction a);

// Per-action effort costs.
double effort(const GuideIntent& intent);  // 0 / 1 / 1 / 2 / 3 by category
double effort(const WordAction& word);     // 1 for any non-silent word
double effort(const GuideAction& action);
double effort(FollowerAction a);           // 0 wait, 2 movement, 3 take

}  // namespace cogrip
