#include "cogrip/taskgen.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cogrip/error.hpp"

namespace cogrip {

namespace {

std::uint64_t piece_key(const SymbolicPiece& p) {
  const auto s = static_cast<std::uint64_t>(code(p.shape) - code(Shape::P));
  const auto c = static_cast<std::uint64_t>(code(p.color) - code(Color::Red));
  const auto a = static_cast<std::uint64_t>(code(p.area) - code(Area::TopLeft));
  return (s * kColors.size() + c) * kAreas.size() + a;
}

}  // namespace

std::vector<SymbolicPiece> TaskInstance::distractors() const {
  std::vector<SymbolicPiece> out;
  for (const PlacedPiece& p : board.pieces()) {
    if (p.id != target_id) out.push_back(p.symbolic);
  }
  return out;
}

int max_steps(int board_size) {
  switch (board_size) {
    case 12: return 30;
    case 21: return 60;
    case 27: return 80;
    default: throw ValidationError("unsupported board size " + std::to_string(board_size));
  }
}

PieceCountRange piece_count_range(int board_size) {
  switch (board_size) {
    case 12: return {4, 4};
    case 21: return {4, 8};
    case 27: return {4, 16};
    default: throw ValidationError("unsupported board size " + std::to_string(board_size));
  }
}

void validate_task(const TaskInstance& task) {
  const int m = task.board.size();
  const std::string who = "task " + std::to_string(task.id);
  if (!task.board.has_piece(task.target_id)) throw ValidationError(who + ": target piece missing");
  if (task.t_max != max_steps(m)) throw ValidationError(who + ": t_max does not match board size");
  const PieceCountRange range = piece_count_range(m);
  const int n = static_cast<int>(task.board.pieces().size());
  if (n < range.min || n > range.max) throw ValidationError(who + ": piece count out of range");
  if (task.template_id < 1 || task.template_id > kTemplateCount) throw ValidationError(who + ": bad template id");
}

std::vector<SymbolicPiece> enumerate_pieces() {
  std::vector<SymbolicPiece> all;
  all.reserve(kSymbolicPieceCount);
  for (Shape s : kShapes) {
    for (Color c : kColors) {
      for (Area a : kAreas) all.push_back({s, c, a});
    }
  }
  return all;
}

SplitAssignment split_pieces(std::uint64_t seed) {
  std::vector<SymbolicPiece> all = enumerate_pieces();
  Rng rng(derive_seed(seed, 0x5EED));
  rng.shuffle(std::span(all));
  SplitAssignment out;
  out.seed = seed;
  auto take = [&, pos = std::size_t{0}](std::vector<SymbolicPiece>& dst, int n) mutable {
    dst.assign(all.begin() + static_cast<std::ptrdiff_t>(pos), all.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += static_cast<std::size_t>(n);
  };
  take(out.train, kTrainPieces);
  take(out.val, kValPieces);
  take(out.test, kTestPieces);
  take(out.holdout, kHoldoutPieces);
  return out;
}

PreferenceOrder template_order(int template_id) {
  // Position first wherever the template mentions a position, except the full
  // template: position-first there needs two same-area distractors, which
  // overfills a 4x4 area on the 12 board.
  switch (template_id) {
    case 1: return PreferenceOrder::CPS;
    case 2: return PreferenceOrder::SPC;
    case 3: return PreferenceOrder::PCS;
    case 4: return PreferenceOrder::CSP;
    case 5: return PreferenceOrder::PCS;
    case 6: return PreferenceOrder::PSC;
    case 7: return PreferenceOrder::CSP;
    default: throw LookupError("template id " + std::to_string(template_id) + " not in 1..7");
  }
}

bool realizes_template(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors, int template_id) {
  const PropertySet wanted = template_properties(template_id);
  if (ia(target, distractors, template_order(template_id)) != wanted) return false;
  for (Property p : {Property::Color, Property::Shape, Property::Position}) {
    if (wanted.has(p)) continue;
    const bool shared = std::any_of(distractors.begin(), distractors.end(),
                                    [&](const SymbolicPiece& d) { return has_property_value(d, target, p); });
    if (!shared) return false;
  }
  return true;
}

std::vector<SymbolicPiece> sample_distractors(const SymbolicPiece& target, int template_id, int count, Rng& rng) {
  std::vector<SymbolicPiece> pool;
  pool.reserve(kSymbolicPieceCount - 1);
  for (const SymbolicPiece& p : enumerate_pieces()) {
    if (p != target) pool.push_back(p);
  }
  const auto n = static_cast<std::size_t>(count);
  for (int attempt = 0; attempt < kDistractorBudget; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    const std::span<const SymbolicPiece> candidate(pool.data(), n);
    if (realizes_template(target, candidate, template_id)) return {candidate.begin(), candidate.end()};
  }
  throw GenerationError("no distractor set for target '" + describe(target) + "' and template " +
                        std::to_string(template_id) + " within " + std::to_string(kDistractorBudget) +
                        " candidate sets");
}

std::vector<SymbolicPiece> sample_distractors(const SymbolicPiece& target, int template_id, int board_size,
                                              std::uint64_t seed) {
  Rng rng(seed);
  const PieceCountRange range = piece_count_range(board_size);
  return sample_distractors(target, template_id, rng.between(range.min, range.max) - 1, rng);
}

std::optional<std::vector<PlacedPiece>> place_pieces(int board_size, std::span<const SymbolicPiece> pieces,
                                                     Rng& rng) {
  std::vector<bool> taken(static_cast<std::size_t>(board_size * board_size), false);
  std::vector<PlacedPiece> placed;
  placed.reserve(pieces.size());
  for (const SymbolicPiece& piece : pieces) {
    const AreaRect rect = area_rect(piece.area, board_size);
    bool ok = false;
    for (int attempt = 0; attempt < kPlacementTries && !ok; ++attempt) {
      const Cells shape = rotated_cells(piece.shape, static_cast<int>(rng.below(kRotations)));
      const Coord anchor{rect.x0 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rect.x1 - rect.x0 + 1))),
                         rect.y0 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rect.y1 - rect.y0 + 1)))};
      Cells tiles{};
      ok = true;
      for (std::size_t i = 0; i < tiles.size() && ok; ++i) {
        tiles[i] = shape[i] + anchor;
        ok = rect.contains(tiles[i]) && !taken[static_cast<std::size_t>(tiles[i].y * board_size + tiles[i].x)];
      }
      if (!ok) continue;
      for (const Coord& t : tiles) taken[static_cast<std::size_t>(t.y * board_size + t.x)] = true;
      placed.push_back({static_cast<int>(placed.size()) + 1, piece, tiles});
    }
    if (!ok) return std::nullopt;
  }
  return placed;
}

TaskInstance generate_task(const SymbolicPiece& target, int template_id, int board_size, std::uint64_t seed) {
  Rng rng(seed);
  const PieceCountRange range = piece_count_range(board_size);
  for (int round = 0; round < kTaskRounds; ++round) {
    const int count = rng.between(range.min, range.max) - 1;
    std::vector<SymbolicPiece> pieces = {target};
    const std::vector<SymbolicPiece> distractors = sample_distractors(target, template_id, count, rng);
    pieces.insert(pieces.end(), distractors.begin(), distractors.end());
    auto placed = place_pieces(board_size, pieces, rng);
    if (!placed) continue;
    const int dta = static_cast<int>(std::count_if(distractors.begin(), distractors.end(),
                                                   [&](const SymbolicPiece& d) { return d.area == target.area; }));
    return TaskInstance{0, Board(board_size, std::move(*placed)), 1, max_steps(board_size), template_id, dta};
  }
  throw GenerationError("could not place pieces for target '" + describe(target) + "' and template " +
                        std::to_string(template_id) + " after " + std::to_string(kTaskRounds) + " rounds");
}

TaskSplit build_split(const std::string& name, std::span<const SymbolicPiece> pieces, int board_size,
                      std::uint64_t seed) {
  TaskSplit split{name, board_size, {}};
  split.tasks.reserve(pieces.size() * kTemplateCount);
  for (const SymbolicPiece& target : pieces) {
    for (int t = 1; t <= kTemplateCount; ++t) {
      TaskInstance task = generate_task(target, t, board_size,
                                        derive_seed(seed, static_cast<std::uint64_t>(board_size), piece_key(target),
                                                    static_cast<std::uint64_t>(t)));
      task.id = static_cast<int>(split.tasks.size());
      split.tasks.push_back(std::move(task));
    }
  }
  return split;
}

}  // namespace cogrip
