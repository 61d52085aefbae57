#include "cogrip/engine.hpp"

#include <string>

#include "cogrip/error.hpp"

namespace cogrip {

using nlohmann::json;

double step_score(double x, int t_max) { return 1.0 - 0.9 * (x / static_cast<double>(t_max)); }

std::string_view name(Outcome o) {
  switch (o) {
    case Outcome::Ongoing: return "ongoing";
    case Outcome::Correct: return "correct";
    case Outcome::Wrong: return "wrong";
    case Outcome::Timeout: return "timeout";
  }
  return "?";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  for (Outcome o : {Outcome::Ongoing, Outcome::Correct, Outcome::Wrong, Outcome::Timeout}) {
    if (name(o) == text) return o;
  }
  return std::nullopt;
}

ScoreBreakdown score(int steps, double guide_effort, double follower_effort, Outcome outcome, int t_max) {
  ScoreBreakdown s;
  s.time = step_score(steps, t_max);
  s.effort = (step_score(guide_effort, t_max) + step_score(follower_effort, t_max)) / 2.0;
  s.outcome = outcome == Outcome::Correct ? 1.0 : -1.0;
  s.game = (s.time + s.effort) / 2.0 + s.outcome;
  return s;
}

double effort_guide(std::span<const GuideAction> actions) {
  double total = 0.0;
  for (const GuideAction& a : actions) total += effort(a);
  return total;
}

double effort_follower(std::span<const FollowerAction> actions) {
  double total = 0.0;
  for (FollowerAction a : actions) total += effort(a);
  return total;
}

std::string_view name(GuideMode m) { return m == GuideMode::Intent ? "intent" : "word"; }

GameConfig GameConfig::for_task(const TaskInstance& task, GuideMode mode) {
  return {task.board.size(), task.t_max, mode};
}

Episode::Episode(TaskInstance task, GuideMode mode)
    : task_(std::move(task)),
      config_(GameConfig::for_task(task_, mode)),
      gripper_{{task_.board.size() / 2, task_.board.size() / 2}},
      last_utterance_(silence()) {
  validate_task(task_);
}

std::string Episode::target_description() const { return describe(task_.target().symbolic); }

std::optional<SymbolicPiece> Episode::piece_under_gripper() const {
  const int id = task_.board.piece_at(gripper_.position);
  if (id == 0) return std::nullopt;
  return task_.board.piece(id).symbolic;
}

Utterance Episode::utter(const GuideAction& action) const {
  if (const auto* word = std::get_if<WordAction>(&action)) {
    if (config_.mode != GuideMode::Word) throw ProtocolError("word action in intent-level episode");
    return make_utterance(word_surface(*word), category(*word));
  }
  if (config_.mode != GuideMode::Intent) throw ProtocolError("intent action in word-level episode");
  const GuideIntent& intent = std::get<GuideIntent>(action);
  switch (intent.kind) {
    case GuideIntent::Kind::Silence: return silence();
    case GuideIntent::Kind::Confirm: return realize_confirm(piece_under_gripper());
    case GuideIntent::Kind::Decline: return realize_decline(piece_under_gripper());
    case GuideIntent::Kind::Go: return realize_go(intent.direction);
    case GuideIntent::Kind::Take: return realize_take(piece_under_gripper());
    case GuideIntent::Kind::Reference: {
      const SymbolicPiece target = task_.target().symbolic;
      const std::vector<SymbolicPiece> distractors = task_.distractors();
      return realize(ia(target, distractors, intent.order), target, intent.order);
    }
  }
  return silence();
}

StepResult Episode::step(const GuideAction& guide, FollowerAction follower) {
  if (terminal()) throw ProtocolError("step on a finished episode");
  Utterance utterance = utter(guide);
  guide_effort_ += effort(guide);
  follower_effort_ += effort(follower);

  const int m = task_.board.size();
  if (const auto dir = direction_of(follower)) gripper_ = move_gripper(gripper_, *dir, m);
  ++t_;

  if (follower == FollowerAction::Take) {
    const int id = task_.board.piece_at(gripper_.position);
    outcome_ = id == task_.target_id ? Outcome::Correct : Outcome::Wrong;
    took_empty_ = id == 0;
  } else if (t_ >= config_.t_max) {
    outcome_ = Outcome::Timeout;
  }

  last_utterance_ = utterance;
  history_.push_back({t_ - 1, guide, utterance, follower, gripper_.position, guide_effort_, follower_effort_});
  return {std::move(utterance), terminal()};
}

ScoreBreakdown Episode::score() const {
  return cogrip::score(t_, guide_effort_, follower_effort_, outcome_, config_.t_max);
}

json step_to_json(const StepRecord& step) {
  return {{"t", step.t},
          {"guide_action", action_name(step.guide_action)},
          {"utterance", step.utterance.surface},
          {"follower_action", name(step.follower_action)},
          {"gripper", {step.gripper.x, step.gripper.y}},
          {"E_G", step.guide_effort},
          {"E_F", step.follower_effort}};
}

json trailer_to_json(const Episode& episode) {
  const ScoreBreakdown s = episode.score();
  return {{"outcome", name(episode.outcome())},
          {"T", episode.t()},
          {"took_empty", episode.took_empty()},
          {"score", {{"time", s.time}, {"effort", s.effort}, {"outcome", s.outcome}, {"game", s.game}}}};
}

std::vector<std::string> episode_log_lines(const Episode& episode) {
  std::vector<std::string> lines;
  for (const StepRecord& r : episode.history()) lines.push_back(step_to_json(r).dump());
  lines.push_back(trailer_to_json(episode).dump());
  return lines;
}

namespace {

GuideAction parse_guide_action(const std::string& text, GuideMode mode) {
  if (mode == GuideMode::Intent) {
    for (int id = 0; id < kIntentActionCount; ++id) {
      const GuideIntent intent = intent_from_action_id(id);
      if (action_name(intent) == text) return intent;
    }
  } else {
    for (int id = 0; id < kWordActionCount; ++id) {
      const WordAction word = word_from_action_id(id);
      if (action_name(word) == text) return word;
    }
  }
  throw ValidationError("unknown guide action '" + text + "' in episode log");
}

}  // namespace

LoggedActions parse_episode_log(std::span<const std::string> lines, GuideMode mode) {
  LoggedActions out;
  for (const std::string& line : lines) {
    const json j = json::parse(line);
    if (!j.contains("guide_action")) continue;
    out.guide.push_back(parse_guide_action(j.at("guide_action").get<std::string>(), mode));
    const auto follower = parse_follower_action(j.at("follower_action").get<std::string>());
    if (!follower) throw ValidationError("unknown follower action in episode log: " + line);
    out.follower.push_back(*follower);
  }
  return out;
}

Episode replay(const TaskInstance& task, const LoggedActions& actions, GuideMode mode) {
  if (actions.guide.size() != actions.follower.size()) throw ValidationError("guide/follower action counts differ");
  Episode episode(task, mode);
  for (std::size_t i = 0; i < actions.guide.size(); ++i) episode.step(actions.guide[i], actions.follower[i]);
  return episode;
}

}  // namespace cogrip
