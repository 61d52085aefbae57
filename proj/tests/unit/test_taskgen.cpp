#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "cogrip/error.hpp"
#include "cogrip/pentomino.hpp"
#include "cogrip/task_io.hpp"
#include "cogrip/taskgen.hpp"
#include "support.hpp"

namespace cogrip {
namespace {

// Full structural check by exhaustive tile scan, independent of Board.
void expect_valid(const TaskInstance& t) {
  const int m = t.size();
  std::vector<int> owner(static_cast<std::size_t>(m * m), 0);
  for (const PlacedPiece& p : t.board.pieces()) {
    ASSERT_TRUE(matches_shape(p.tiles, p.symbolic.shape));
    ASSERT_TRUE(edge_connected(p.tiles));
    for (Coord c : p.tiles) {
      ASSERT_TRUE(c.x >= 0 && c.y >= 0 && c.x < m && c.y < m);
      ASSERT_EQ(area_of(c, m), p.symbolic.area);
      int& o = owner[static_cast<std::size_t>(c.y * m + c.x)];
      ASSERT_EQ(o, 0) << "overlap in task " << t.id;
      o = p.id;
    }
  }
  const PieceCountRange r = piece_count_range(m);
  const int n = static_cast<int>(t.board.pieces().size());
  ASSERT_GE(n, r.min);
  ASSERT_LE(n, r.max);
  ASSERT_EQ(t.t_max, max_steps(m));
  ASSERT_TRUE(realizes_template(t.target().symbolic, t.distractors(), t.template_id)) << "task " << t.id;
}

TEST(Pieces, Enumeration) {
  const auto all = enumerate_pieces();
  ASSERT_EQ(all.size(), 378u);
  EXPECT_EQ(all.front(), (SymbolicPiece{Shape::P, Color::Red, Area::TopLeft}));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::set<SymbolicPiece>(all.begin(), all.end()).size(), 378u);
}

TEST(Pieces, Split) {
  const SplitAssignment a = split_pieces(49184), b = split_pieces(49184);
  EXPECT_EQ(a.train.size(), 250u);
  EXPECT_EQ(a.val.size(), 30u);
  EXPECT_EQ(a.test.size(), 35u);
  EXPECT_EQ(a.holdout.size(), 63u);
  std::set<SymbolicPiece> all;
  for (const auto* part : {&a.train, &a.val, &a.test, &a.holdout}) all.insert(part->begin(), part->end());
  EXPECT_EQ(all.size(), 378u);
  for (const auto& p : a.test) EXPECT_EQ(std::count(a.train.begin(), a.train.end(), p), 0);
  EXPECT_EQ(a.train, b.train);
  EXPECT_NE(split_pieces(1).train, a.train);
}

TEST(Config, BoardTable) {
  EXPECT_EQ(max_steps(12), 30);
  EXPECT_EQ(max_steps(21), 60);
  EXPECT_EQ(max_steps(27), 80);
  EXPECT_EQ(piece_count_range(12).min, 4);
  EXPECT_EQ(piece_count_range(12).max, 4);
  EXPECT_EQ(piece_count_range(21).max, 8);
  EXPECT_EQ(piece_count_range(27).max, 16);
}

TEST(Templates, ColorOnlyExample) {
  const SymbolicPiece target{Shape::T, Color::Blue, Area::Center};
  Rng rng(5);
  const auto ds = sample_distractors(target, 1, 3, rng);
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ia(target, ds, template_order(1)), template_properties(1));
  for (const auto& d : ds) EXPECT_NE(d.color, target.color);
  EXPECT_TRUE(std::any_of(ds.begin(), ds.end(), [&](const auto& d) { return d.shape == target.shape; }));
  EXPECT_TRUE(std::any_of(ds.begin(), ds.end(), [&](const auto& d) { return d.area == target.area; }));
  EXPECT_EQ(std::count(ds.begin(), ds.end(), target), 0);
}

TEST(Templates, EveryTemplateSamplesForEveryBoard) {
  const auto all = enumerate_pieces();
  for (int m : kBoardSizes) {
    for (int tid = 1; tid <= kTemplateCount; ++tid) {
      for (int k = 0; k < 20; ++k) {
        const SymbolicPiece& target = all[static_cast<std::size_t>((k * 37 + tid * 11) % 378)];
        const auto ds = sample_distractors(target, tid, m, derive_seed(9, m, tid, k));
        ASSERT_TRUE(realizes_template(target, ds, tid));
        ASSERT_EQ(ia(target, ds, template_order(tid)), template_properties(tid));
        ASSERT_EQ(std::count(ds.begin(), ds.end(), target), 0);
      }
    }
  }
}

TEST(Templates, RealizesTemplateRequiresSharedOmittedProperties) {
  const SymbolicPiece target{Shape::T, Color::Blue, Area::Center};
  // Color alone distinguishes, but nobody shares shape or area: the speaker
  // could have said "the t" just as well, so template 1 isn't realized.
  const std::vector<SymbolicPiece> loose = {{Shape::W, Color::Red, Area::TopLeft},
                                            {Shape::P, Color::Green, Area::TopRight},
                                            {Shape::U, Color::Yellow, Area::BottomLeft}};
  EXPECT_FALSE(realizes_template(target, loose, 1));
}

TEST(Placement, PiecesLandInTheirAreas) {
  Rng rng(4);
  const auto all = enumerate_pieces();
  for (int m : kBoardSizes) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<SymbolicPiece> ps;
      for (int i = 0; i < 4; ++i) ps.push_back(all[rng.below(all.size())]);
      ps[1].area = ps[0].area == Area::Center ? Area::TopLeft : Area::Center;
      const auto placed = place_pieces(m, ps, rng);
      if (!placed) continue;
      ASSERT_EQ(placed->size(), 4u);
      ASSERT_NO_THROW(Board(m, *placed));
      for (std::size_t i = 0; i < placed->size(); ++i) EXPECT_EQ((*placed)[i].id, static_cast<int>(i) + 1);
    }
  }
}

// A 4x4 area holds at most three pentominoes' worth of cells, so three
// pieces in one M=12 area cannot all be placed.
TEST(Placement, ImpossibleRequestFails) {
  Rng rng(8);
  const std::vector<SymbolicPiece> crowd(4, SymbolicPiece{Shape::X, Color::Red, Area::Center});
  EXPECT_FALSE(place_pieces(12, crowd, rng).has_value());
}

TEST(Generate, SplitsHaveExactSizesAndValidate) {
  const SplitAssignment pieces = split_pieces(49184);
  for (int m : kBoardSizes) {
    const TaskSplit test = build_split("test", pieces.test, m, 49184);
    ASSERT_EQ(test.tasks.size(), 245u);
    for (std::size_t i = 0; i < test.tasks.size(); ++i) {
      const TaskInstance& t = test.tasks[i];
      EXPECT_EQ(t.id, static_cast<int>(i));
      EXPECT_EQ(t.template_id, static_cast<int>(i % 7) + 1);
      EXPECT_EQ(t.target().symbolic, pieces.test[i / 7]);
      expect_valid(t);
    }
  }
  EXPECT_EQ(build_split("val", pieces.val, 12, 49184).tasks.size(), 210u);
}

TEST(Generate, DeterministicPerSeed) {
  const SplitAssignment pieces = split_pieces(7);
  const auto a = build_split("val", pieces.val, 21, 7);
  const auto b = build_split("val", pieces.val, 21, 7);
  ASSERT_EQ(a.tasks.size(), b.tasks.size());
  for (std::size_t i = 0; i < a.tasks.size(); ++i) EXPECT_EQ(task_to_line(a.tasks[i]), task_to_line(b.tasks[i]));
  const auto c = build_split("val", pieces.val, 21, 8);
  EXPECT_NE(task_to_line(a.tasks[0]), task_to_line(c.tasks[0]));
}

TEST(Generate, DtaCountsSameAreaDistractors) {
  const SplitAssignment pieces = split_pieces(49184);
  const auto split = build_split("val", pieces.val, 27, 49184);
  for (const TaskInstance& t : split.tasks) {
    const auto ds = t.distractors();
    EXPECT_EQ(t.dta, std::count_if(ds.begin(), ds.end(), [&](const auto& d) { return d.area == t.target().symbolic.area; }));
  }
}

TEST(Generate, LargerBoardsDrawPieceCountsAcrossTheRange) {
  const SplitAssignment pieces = split_pieces(49184);
  for (int m : {21, 27}) {
    const auto split = build_split("test", pieces.test, m, 49184);
    std::set<std::size_t> counts;
    for (const auto& t : split.tasks) counts.insert(t.board.pieces().size());
    EXPECT_EQ(*counts.begin(), 4u);
    EXPECT_EQ(*counts.rbegin(), static_cast<std::size_t>(piece_count_range(m).max));
  }
}

TEST(TaskIo, RoundTrip) {
  const TaskInstance t = test::corner_task();
  const TaskInstance back = task_from_json(task_to_json(t));
  EXPECT_EQ(task_to_line(back), task_to_line(t));
  EXPECT_EQ(back.dta, t.dta);
  EXPECT_EQ(split_file_name("train", 12), "train_12.jsonl");
}

TEST(TaskIo, SplitFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "cogrip_task_io";
  std::filesystem::create_directories(dir);
  const SplitAssignment pieces = split_pieces(3);
  const TaskSplit split = build_split("val", pieces.val, 12, 3);
  const auto path = dir / split_file_name("val", 12);
  write_split(path, split);
  const auto back = read_split(path);
  ASSERT_EQ(back.size(), split.tasks.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(task_to_line(back[i]), task_to_line(split.tasks[i]));
  std::filesystem::remove_all(dir);
}

TEST(TaskIo, RejectsMalformedTasks) {
  const nlohmann::json good = task_to_json(test::corner_task());
  auto bad_dta = good;
  bad_dta["dta"] = 3;
  EXPECT_THROW(task_from_json(bad_dta), ValidationError);
  auto bad_shape = good;
  bad_shape["pieces"][0]["shape"] = "Q";
  EXPECT_THROW(task_from_json(bad_shape), ValidationError);
  auto bad_target = good;
  bad_target["target_id"] = 9;
  EXPECT_THROW(task_from_json(bad_target), ValidationError);
  auto bad_tmax = good;
  bad_tmax["t_max"] = 31;
  EXPECT_THROW(task_from_json(bad_tmax), ValidationError);
  auto missing = good;
  missing.erase("pieces");
  EXPECT_THROW(task_from_json(missing), ValidationError);
  auto overlap = good;
  overlap["pieces"][1]["tiles"] = good["pieces"][0]["tiles"];
  overlap["pieces"][1]["shape"] = "T";
  overlap["pieces"][1]["area"] = "top right";
  EXPECT_THROW(task_from_json(overlap), ValidationError);
}

}  // namespace
}  // namespace cogrip
