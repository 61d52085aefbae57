#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogrip/actions.hpp"
#include "cogrip/board.hpp"
#include "cogrip/reg.hpp"
#include "cogrip/taskgen.hpp"

namespace cogrip {

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

// 1 - 0.9 * (x / t_max), deliberately unclamped: efforts above t_max push it below 0.1.
double step_score(double x, int t_max);

enum class Outcome : std::uint8_t { Ongoing, Correct, Wrong, Timeout };
std::string_view name(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view text);

struct ScoreBreakdown {
  double time = 0.0;
  double effort = 0.0;
  double outcome = 0.0;
  double game = 0.0;
};

ScoreBreakdown score(int steps, double guide_effort, double follower_effort, Outcome outcome, int t_max);

double effort_guide(std::span<const GuideAction> actions);
double effort_follower(std::span<const FollowerAction> actions);

// ---------------------------------------------------------------------------
// Episodes
// ---------------------------------------------------------------------------

enum class GuideMode : std::uint8_t { Intent, Word };
std::string_view name(GuideMode m);

struct GameConfig {
  int board_size = 12;
  int t_max = 30;
  GuideMode mode = GuideMode::Intent;

  static GameConfig for_task(const TaskInstance& task, GuideMode mode = GuideMode::Intent);
};

struct StepRecord {
  int t = 0;
  GuideAction guide_action;
  Utterance utterance;
  FollowerAction follower_action = FollowerAction::Wait;
  Coord gripper;  // after the follower acted
  double guide_effort = 0.0;
  double follower_effort = 0.0;
};

struct StepResult {
  Utterance utterance;
  bool terminal = false;
};

// One game. reset() happens at construction: gripper in the center, t = 0,
// efforts 0. Each step realizes the guide action first, then applies the
// follower action. Terminates on take (correct iff the gripper is over a
// target tile) or when t reaches t_max.
class Episode {
 public:
  // Validates the task; throws ValidationError.
  explicit Episode(TaskInstance task, GuideMode mode = GuideMode::Intent);

  const TaskInstance& task() const { return task_; }
  const Board& board() const { return task_.board; }
  const GameConfig& config() const { return config_; }

  int t() const { return t_; }
  Gripper gripper() const { return gripper_; }
  double guide_effort() const { return guide_effort_; }
  double follower_effort() const { return follower_effort_; }
  Outcome outcome() const { return outcome_; }
  bool terminal() const { return outcome_ != Outcome::Ongoing; }
  // Set when the episode ended by taking at an empty tile.
  bool took_empty() const { return took_empty_; }

  // Last utterance the follower received; silence before the first step.
  const Utterance& last_utterance() const { return last_utterance_; }
  std::span<const StepRecord> history() const { return history_; }

  // Target description the guide sees every step, e.g. "blue t top right".
  std::string target_description() const;

  // What the guide action would say in the current state. Throws
  // ProtocolError when the action does not fit the guide mode.
  Utterance utter(const GuideAction& action) const;

  // Throws ProtocolError once the episode is terminal.
  StepResult step(const GuideAction& guide, FollowerAction follower);

  // Only meaningful once terminal.
  ScoreBreakdown score() const;

 private:
  std::optional<SymbolicPiece> piece_under_gripper() const;

  TaskInstance task_;
  GameConfig config_;
  Gripper gripper_;
  int t_ = 0;
  double guide_effort_ = 0.0;
  double follower_effort_ = 0.0;
  Outcome outcome_ = Outcome::Ongoing;
  bool took_empty_ = false;
  Utterance last_utterance_;
  std::vector<StepRecord> history_;
};

// Episode log: one JSON object per step and a trailer
// {"outcome", "T", "took_empty", "score": {"time", "effort", "outcome", "game"}}.
nlohmann::json step_to_json(const StepRecord& step);
nlohmann::json trailer_to_json(const Episode& episode);
std::vector<std::string> episode_log_lines(const Episode& episode);

struct LoggedActions {
  std::vector<GuideAction> guide;
  std::vector<FollowerAction> follower;
};

// Recovers the action sequence from log lines (trailer ignored).
LoggedActions parse_episode_log(std::span<const std::string> lines, GuideMode mode);

// Re-runs the logged actions on a fresh episode.
Episode replay(const TaskInstance& task, const LoggedActions& actions, GuideMode mode = GuideMode::Intent);

}  // namespace cogrip
