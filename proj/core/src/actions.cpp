#include "cogrip/actions.hpp"

#include <string>

#include "cogrip/error.hpp"

namespace cogrip {

bool GuideIntent::operator==(const GuideIntent& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Go) return direction == o.direction;
  if (kind == Kind::Reference) return order == o.order;
  return true;
}

Category category(const GuideIntent& intent) {
  switch (intent.kind) {
    case GuideIntent::Kind::Silence: return Category::Silence;
    case GuideIntent::Kind::Confirm: return Category::Confirm;
    case GuideIntent::Kind::Decline: return Category::Decline;
    case GuideIntent::Kind::Go:
    case GuideIntent::Kind::Take: return Category::Directive;
    case GuideIntent::Kind::Reference: return Category::Reference;
  }
  return Category::Silence;
}

int intent_action_id(const GuideIntent& intent) {
  switch (intent.kind) {
    case GuideIntent::Kind::Silence: return 0;
    case GuideIntent::Kind::Confirm: return 1;
    case GuideIntent::Kind::Decline: return 2;
    case GuideIntent::Kind::Go: return 3 + static_cast<int>(intent.direction);
    case GuideIntent::Kind::Take: return 7;
    case GuideIntent::Kind::Reference: return 8 + static_cast<int>(intent.order);
  }
  return 0;
}

GuideIntent intent_from_action_id(int id) {
  if (id == 0) return GuideIntent::silence();
  if (id == 1) return GuideIntent::confirm();
  if (id == 2) return GuideIntent::decline();
  if (id >= 3 && id <= 6) return GuideIntent::go(kDirections[static_cast<std::size_t>(id - 3)]);
  if (id == 7) return GuideIntent::take();
  if (id >= 8 && id < kIntentActionCount) return GuideIntent::reference(kPreferenceOrders[static_cast<std::size_t>(id - 8)]);
  throw LookupError("guide action id " + std::to_string(id) + " not in 0.." + std::to_string(kIntentActionCount - 1));
}

std::string action_name(const GuideIntent& intent) {
  switch (intent.kind) {
    case GuideIntent::Kind::Silence: return "silence";
    case GuideIntent::Kind::Confirm: return "confirm";
    case GuideIntent::Kind::Decline: return "decline";
    case GuideIntent::Kind::Go: return std::string(name(intent.direction));
    case GuideIntent::Kind::Take: return "take";
    case GuideIntent::Kind::Reference: return std::string(name(intent.order));
  }
  return "?";
}

bool WordAction::operator==(const WordAction& o) const { return word_action_id(*this) == word_action_id(o); }

Category category(const WordAction& word) {
  switch (word.kind) {
    case WordAction::Kind::Silence: return Category::Silence;
    case WordAction::Kind::Take: return Category::Directive;
    default: return Category::Reference;
  }
}

int word_action_id(const WordAction& word) {
  switch (word.kind) {
    case WordAction::Kind::Silence: return 0;
    case WordAction::Kind::Color: return 1 + code(word.color) - code(Color::Red);
    case WordAction::Kind::Shape: return 7 + code(word.shape) - code(Shape::P);
    case WordAction::Kind::Position: return 14 + code(word.area) - code(Area::TopLeft);
    case WordAction::Kind::Take: return 23;
  }
  return 0;
}

WordAction word_from_action_id(int id) {
  WordAction w;
  if (id == 0) return w;
  if (id >= 1 && id <= 6) {
    w.kind = WordAction::Kind::Color;
    w.color = kColors[static_cast<std::size_t>(id - 1)];
  } else if (id >= 7 && id <= 13) {
    w.kind = WordAction::Kind::Shape;
    w.shape = kShapes[static_cast<std::size_t>(id - 7)];
  } else if (id >= 14 && id <= 22) {
    w.kind = WordAction::Kind::Position;
    w.area = kAreas[static_cast<std::size_t>(id - 14)];
  } else if (id == 23) {
    w.kind = WordAction::Kind::Take;
  } else {
    throw LookupError("word action id " + std::to_string(id) + " not in 0.." + std::to_string(kWordActionCount - 1));
  }
  return w;
}

std::string word_surface(const WordAction& word) {
  switch (word.kind) {
    case WordAction::Kind::Silence: return "";
    case WordAction::Kind::Color: return word_surface(word.color);
    case WordAction::Kind::Shape: return word_surface(word.shape);
    case WordAction::Kind::Position: return word_surface(word.area);
    case WordAction::Kind::Take: return "take";
  }
  return "";
}

std::string action_name(const WordAction& word) {
  return word.kind == WordAction::Kind::Silence ? "silence" : word_surface(word);
}

std::string action_name(const GuideAction& action) {
  return std::visit([](const auto& a) { return action_name(a); }, action);
}

int follower_action_id(FollowerAction a) { return static_cast<int>(a); }

FollowerAction follower_from_action_id(int id) {
  if (id < 0 || id >= kFollowerActionCount) {
    throw LookupError("follower action id " + std::to_string(id) + " not in 0..5");
  }
  return kFollowerActions[static_cast<std::size_t>(id)];
}

std::string_view name(FollowerAction a) {
  switch (a) {
    case FollowerAction::Wait: return "wait";
    case FollowerAction::Left: return "left";
    case FollowerAction::Right: return "right";
    case FollowerAction::Up: return "up";
    case FollowerAction::Down: return "down";
    case FollowerAction::Take: return "take";
  }
  return "?";
}

std::optional<FollowerAction> parse_follower_action(std::string_view text) {
  for (FollowerAction a : kFollowerActions) {
    if (name(a) == text) return a;
  }
  return std::nullopt;
}

FollowerAction move_action(Direction d) {
  switch (d) {
    case Direction::Left: return FollowerAction::Left;
    case Direction::Right: return FollowerAction::Right;
    case Direction::Up: return FollowerAction::Up;
    case Direction::Down: return FollowerAction::Down;
  }
  return FollowerAction::Wait;
}

std::optional<Direction> direction_of(FollowerAction a) {
  switch (a) {
    case FollowerAction::Left: return Direction::Left;
    case FollowerAction::Right: return Direction::Right;
    case FollowerAction::Up: return Direction::Up;
    case FollowerAction::Down: return Direction::Down;
    default: return std::nullopt;
  }
}

double effort(const GuideIntent& intent) {
  switch (category(intent)) {
    case Category::Silence: return 0.0;
    case Category::Confirm:
    case Category::Decline: return 1.0;
    case Category::Directive: return 2.0;
    case Category::Reference: return 3.0;
  }
  return 0.0;
}

double effort(const WordAction& word) { return word.kind == WordAction::Kind::Silence ? 0.0 : 1.0; }

double effort(const GuideAction& action) {
  return std::visit([](const auto& a) { return effort(a); }, action);
}

double effort(FollowerAction a) {
  switch (a) {
    case FollowerAction::Wait: return 0.0;
    case FollowerAction::Take: return 3.0;
    default: return 2.0;
  }
}

}  // namespace cogrip
