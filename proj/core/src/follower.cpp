#include "cogrip/follower.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace cogrip {

namespace {

constexpr int kSide = SymbolicView::kSide;
constexpr int kCenter = SymbolicView::kRadius;

std::optional<Area> parse_position(std::span<const std::string_view> words) {
  std::string phrase;
  for (std::string_view w : words) {
    if (!phrase.empty()) phrase += ' ';
    phrase += w;
  }
  return parse_area(phrase);
}

std::optional<Direction> parse_direction(std::string_view w) {
  for (Direction d : kDirections) {
    if (name(d) == w) return d;
  }
  return std::nullopt;
}

// Parses the words after "take the".
std::optional<TargetDescriptor> parse_reference(std::span<const std::string_view> words) {
  TargetDescriptor d;
  std::size_t i = 0;
  if (i < words.size()) {
    if (auto c = parse_color(words[i])) {
      d.color = c;
      ++i;
    }
  }
  if (i >= words.size()) return std::nullopt;
  if (auto s = parse_shape(words[i])) {
    d.shape = s;
  } else if (words[i] != "piece") {
    return std::nullopt;
  }
  ++i;
  if (i == words.size()) return d;
  if (words[i] != "at") return std::nullopt;
  d.area = parse_position(words.subspan(i + 1));
  if (!d.area) return std::nullopt;
  return d;
}

// BFS over in-world view cells from the center. Returns cells in visit order
// and the parent index of each cell (-1 for the root and unreached cells).
struct ViewSearch {
  std::vector<int> order;
  std::array<int, kSide * kSide> parent{};
  std::array<bool, kSide * kSide> reached{};
};

ViewSearch search_view(const SymbolicView& view) {
  ViewSearch s;
  s.parent.fill(-1);
  const int root = kCenter * kSide + kCenter;
  s.reached[static_cast<std::size_t>(root)] = true;
  s.order.push_back(root);
  for (std::size_t head = 0; head < s.order.size(); ++head) {
    const int cur = s.order[head];
    for (Direction d : kDirections) {
      const Coord o = offset(d);
      const int col = cur % kSide + o.x, row = cur / kSide + o.y;
      if (col < 0 || row < 0 || col >= kSide || row >= kSide || !view.in_world(col, row)) continue;
      const int next = row * kSide + col;
      if (s.reached[static_cast<std::size_t>(next)]) continue;
      s.reached[static_cast<std::size_t>(next)] = true;
      s.parent[static_cast<std::size_t>(next)] = cur;
      s.order.push_back(next);
    }
  }
  return s;
}

FollowerAction step_between(int from, int to) {
  const int dx = to % kSide - from % kSide, dy = to / kSide - from / kSide;
  if (dx < 0) return FollowerAction::Left;
  if (dx > 0) return FollowerAction::Right;
  return dy < 0 ? FollowerAction::Up : FollowerAction::Down;
}

std::vector<FollowerAction> path_to(const ViewSearch& s, int cell) {
  std::vector<FollowerAction> path;
  if (!s.reached[static_cast<std::size_t>(cell)]) return path;
  for (int cur = cell; s.parent[static_cast<std::size_t>(cur)] != -1; cur = s.parent[static_cast<std::size_t>(cur)]) {
    path.push_back(step_between(s.parent[static_cast<std::size_t>(cur)], cur));
  }
  std::reverse(path.begin(), path.end());
  if (path.size() > static_cast<std::size_t>(kMaxPlanLength)) path.resize(kMaxPlanLength);
  return path;
}

}  // namespace

void TargetDescriptor::merge(const TargetDescriptor& update) {
  if (update.color) color = update.color;
  if (update.shape) shape = update.shape;
  if (update.area) area = update.area;
}

ParsedUtterance parse_utterance(std::string_view surface) {
  const std::vector<std::string_view> words = split_words(surface);
  ParsedUtterance out;
  if (words.empty()) return out;

  const std::string_view head = words[0];
  if (head == "yes") {
    out.category = Category::Confirm;
    return out;
  }
  if (head == "not") {
    out.category = Category::Decline;
    return out;
  }
  if (head == "go" && words.size() == 2) {
    if (auto d = parse_direction(words[1])) {
      out.category = Category::Directive;
      out.direction = d;
      return out;
    }
  }
  if (head == "take") {
    if (words.size() >= 2 && words[1] == "the") {
      if (auto d = parse_reference(std::span(words).subspan(2))) {
        out.category = Category::Reference;
        out.descriptor = *d;
        return out;
      }
    } else {
      out.category = Category::Directive;
      out.take = true;
      return out;
    }
  }
  // Single word-level property values.
  if (words.size() == 1) {
    if (auto c = parse_color(head)) {
      out.category = Category::Reference;
      out.descriptor.color = c;
      return out;
    }
    if (auto s = parse_shape(head)) {
      out.category = Category::Reference;
      out.descriptor.shape = s;
      return out;
    }
  }
  if (auto a = parse_position(words)) {
    out.category = Category::Reference;
    out.descriptor.area = a;
    return out;
  }
  out.understood = false;
  return out;
}

Category classify(std::string_view surface) { return parse_utterance(surface).category; }

double confidence(int index, double phi, double l_min) { return std::max(std::pow(phi, index), l_min); }

std::vector<FollowerAction> plan_path(const SymbolicView& view, int col, int row) {
  return path_to(search_view(view), row * kSide + col);
}

HeuristicFollower::HeuristicFollower(FollowerConfig config, int board_size)
    : config_(config), board_size_(board_size) {}

void HeuristicFollower::set_plan(const std::vector<FollowerAction>& actions) {
  plan_.clear();
  for (std::size_t i = 0; i < actions.size() && i < static_cast<std::size_t>(kMaxPlanLength); ++i) {
    plan_.push_back({actions[i], confidence(static_cast<int>(i) + 1, config_.phi, config_.l_min)});
  }
}

FollowerAction HeuristicFollower::act(std::string_view utterance, const SymbolicView& view, Coord gripper,
                                      Rng& rng) {
  const ParsedUtterance u = parse_utterance(utterance);
  if (!u.understood) ++not_understood_;
  switch (u.category) {
    case Category::Silence: return on_silence(view, gripper, rng);
    case Category::Confirm: return on_confirm(view, gripper, rng);
    case Category::Decline: return on_decline();
    case Category::Directive: return on_directive(u, gripper);
    case Category::Reference: return on_reference(u.descriptor, view, gripper, rng);
  }
  return FollowerAction::Wait;
}

FollowerAction HeuristicFollower::execute_next(Rng& rng) {
  if (plan_.empty()) return FollowerAction::Wait;
  const PlannedAction next = plan_.front();
  plan_.pop_front();
  return rng.uniform() < next.confidence ? next.action : FollowerAction::Wait;
}

FollowerAction HeuristicFollower::on_silence(const SymbolicView& view, Coord gripper, Rng& rng) {
  if (plan_.empty()) return on_reference({}, view, gripper, rng);
  return execute_next(rng);
}

FollowerAction HeuristicFollower::on_confirm(const SymbolicView& view, Coord gripper, Rng& rng) {
  for (PlannedAction& p : plan_) p.confidence = 1.0;
  return on_silence(view, gripper, rng);
}

FollowerAction HeuristicFollower::on_decline() {
  plan_.clear();
  return FollowerAction::Wait;
}

FollowerAction HeuristicFollower::on_directive(const ParsedUtterance& u, Coord gripper) {
  plan_.clear();
  if (u.take) return FollowerAction::Take;
  if (!u.direction) return FollowerAction::Wait;
  std::vector<FollowerAction> steps;
  Coord pos = gripper;
  for (int i = 0; i < kMaxPlanLength; ++i) {
    const Coord next = pos + offset(*u.direction);
    if (next.x < 0 || next.y < 0 || next.x >= board_size_ || next.y >= board_size_) break;
    steps.push_back(move_action(*u.direction));
    pos = next;
  }
  set_plan(steps);
  if (plan_.empty()) return FollowerAction::Wait;
  const FollowerAction first = plan_.front().action;
  plan_.pop_front();
  return first;
}

std::vector<FollowerAction> HeuristicFollower::plan_towards(Coord from, Coord to) const {
  std::vector<FollowerAction> steps;
  Coord cur = from;
  while (cur != to && steps.size() < static_cast<std::size_t>(kMaxPlanLength)) {
    const Coord d = to - cur;
    Direction dir;
    if (std::abs(d.x) >= std::abs(d.y)) {
      dir = d.x < 0 ? Direction::Left : Direction::Right;
    } else {
      dir = d.y < 0 ? Direction::Up : Direction::Down;
    }
    steps.push_back(move_action(dir));
    cur = cur + offset(dir);
  }
  return steps;
}

FollowerAction HeuristicFollower::on_reference(const TargetDescriptor& update, const SymbolicView& view,
                                               Coord gripper, Rng& rng) {
  descriptor_.merge(update);
  const TargetDescriptor& d = descriptor_;
  std::vector<FollowerAction> actions;

  if (d.area && area_of(gripper, board_size_) != *d.area) {
    const AreaRect rect = area_rect(*d.area, board_size_);
    actions = plan_towards(gripper, {std::clamp(gripper.x, rect.x0, rect.x1), std::clamp(gripper.y, rect.y0, rect.y1)});
  } else if (!d.empty()) {
    const ViewSearch search = search_view(view);
    auto matches = [&](int cell) {
      const int col = cell % kSide, row = cell / kSide;
      if (!view.occupied(col, row)) return false;
      const SymbolicView::Cell& c = view.at(col, row);
      if (d.color && c.color != code(*d.color)) return false;
      if (d.shape && c.shape != code(*d.shape)) return false;
      if (d.area && area_of(view.world(col, row), board_size_) != *d.area) return false;
      return true;
    };

    std::optional<int> goal;
    if (d.has_appearance()) {
      for (int cell : search.order) {
        if (matches(cell)) {
          goal = cell;
          break;
        }
      }
    } else {
      // In the described area without color or shape: approach a random piece.
      std::vector<int> ids, first_cell;
      for (int cell : search.order) {
        if (!matches(cell)) continue;
        const int id = view.at(cell % kSide, cell / kSide).piece_id;
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
          ids.push_back(id);
          first_cell.push_back(cell);
        }
      }
      if (!ids.empty()) goal = first_cell[rng.below(ids.size())];
    }

    if (goal) {
      actions = path_to(search, *goal);
    } else if (d.area) {
      actions = plan_towards(gripper, area_rect(*d.area, board_size_).center());
    }
  }
  set_plan(actions);
  return execute_next(rng);
}

}  // namespace cogrip
