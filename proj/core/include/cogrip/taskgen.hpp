#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cogrip/board.hpp"
#include "cogrip/reg.hpp"
#include "cogrip/rng.hpp"
#include "cogrip/symbols.hpp"

namespace cogrip {

inline constexpr int kSymbolicPieceCount = 378;
inline constexpr int kTrainPieces = 250;
inline constexpr int kValPieces = 30;
inline constexpr int kTestPieces = 35;
inline constexpr int kHoldoutPieces = 63;

inline constexpr int kDistractorBudget = 10'000;
inline constexpr int kPlacementTries = 100;
inline constexpr int kTaskRounds = 100;

struct TaskInstance {
  int id = 0;  // position within its split file
  Board board;
  int target_id = 0;
  int t_max = 0;
  int template_id = 0;
  int dta = 0;  // distractors sharing the target's area

  int size() const { return board.size(); }
  const PlacedPiece& target() const { return board.piece(target_id); }
  std::vector<SymbolicPiece> distractors() const;
};

// Throws ValidationError when the task breaks a structural invariant:
// unsupported size, missing target, wrong step cap or piece count.
void validate_task(const TaskInstance& task);

int max_steps(int board_size);  // 30 / 60 / 80

struct PieceCountRange {
  int min = 0;
  int max = 0;
};
PieceCountRange piece_count_range(int board_size);  // total pieces including the target

// All 378 symbolic pieces sorted by (shape, color, area).
std::vector<SymbolicPiece> enumerate_pieces();

struct SplitAssignment {
  std::uint64_t seed = 0;
  std::vector<SymbolicPiece> train, val, test, holdout;
};

SplitAssignment split_pieces(std::uint64_t seed);

// Preference order under which a distractor set is checked against a template.
PreferenceOrder template_order(int template_id);

// A distractor set realizes template t when the IA under template_order(t)
// selects exactly the template's properties and, for every property the
// template leaves out, at least one distractor shares the target's value.
bool realizes_template(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors, int template_id);

// Rejection-samples `count` distinct distractors uniformly from the other 377
// pieces. Throws GenerationError after kDistractorBudget candidate sets.
std::vector<SymbolicPiece> sample_distractors(const SymbolicPiece& target, int template_id, int count, Rng& rng);

// Draws the distractor count for the board size, then samples.
std::vector<SymbolicPiece> sample_distractors(const SymbolicPiece& target, int template_id, int board_size,
                                              std::uint64_t seed);

// Places pieces in order, each in its declared area with a uniformly drawn
// anchor cell and rotation, trying up to kPlacementTries coordinates per piece.
// Piece ids follow input order starting at 1. Returns nullopt on failure.
std::optional<std::vector<PlacedPiece>> place_pieces(int board_size, std::span<const SymbolicPiece> pieces, Rng& rng);

// One task for (target, template). Throws GenerationError.
TaskInstance generate_task(const SymbolicPiece& target, int template_id, int board_size, std::uint64_t seed);

struct TaskSplit {
  std::string name;
  int board_size = 0;
  std::vector<TaskInstance> tasks;
};

// 7 tasks per target piece, one per template, in (piece, template) order.
TaskSplit build_split(const std::string& name, std::span<const SymbolicPiece> pieces, int board_size,
                      std::uint64_t seed);

}  // namespace cogrip
