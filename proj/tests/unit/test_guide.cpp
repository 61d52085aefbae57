#include <gtest/gtest.h>

#include <cmath>

#include "cogrip/engine.hpp"
#include "cogrip/guide.hpp"
#include "support.hpp"

namespace cogrip {
namespace {

using K = GuideIntent::Kind;

TEST(Guide, InitialReferenceIsPositionFirst) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(1);
  const GuideIntent first = g.act(task.board, 1, {6, 6}, 0);
  EXPECT_EQ(first, GuideIntent::reference(PreferenceOrder::PCS));
  const Episode ep(task);
  EXPECT_TRUE(ep.utter(first).surface.ends_with("at top right"));
}

TEST(Guide, InsideTargetAreaPrefersColorShape) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(1);
  EXPECT_EQ(g.act(task.board, 1, {11, 3}, 0), GuideIntent::reference(PreferenceOrder::CSP));
}

TEST(Guide, OverTargetAlternatesConfirmAndTake) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(1);
  g.act(task.board, 1, {6, 6}, 0);
  const GuideIntent first = g.act(task.board, 1, {9, 2}, 1);
  EXPECT_EQ(first, GuideIntent::confirm());
  EXPECT_EQ(g.act(task.board, 1, {9, 2}, 2), GuideIntent::take());
  EXPECT_EQ(g.act(task.board, 1, {9, 1}, 3), GuideIntent::confirm());
}

TEST(Guide, OverOtherPieceAlternatesDeclineAndDirective) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(4);
  g.act(task.board, 1, {6, 6}, 0);
  // (1,1) is the red P; the nearest target tile (8,0) is to the right.
  EXPECT_EQ(g.act(task.board, 1, {1, 1}, 1), GuideIntent::decline());
  EXPECT_EQ(g.act(task.board, 1, {1, 1}, 2), GuideIntent::go(Direction::Right));
  EXPECT_EQ(g.act(task.board, 1, {1, 1}, 3), GuideIntent::decline());
}

// Rule trace, hand-derived: R = 1, the follower walks left, away from the
// target's nearest tile (9,2).
//   t0 (6,6)  reference pcs
//   t1 (5,6)  farther        -> decline
//   t2 (4,6)  farther        -> go right (dx 5, dy -4)
//   t3 (3,6)  farther        -> decline
//   t4 (4,6)  closer         -> confirm
//   t5 (4,6)  still R steps  -> reference pcs
TEST(Guide, RuleTraceMovingAway) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(1);
  const std::vector<Coord> path = {{6, 6}, {5, 6}, {4, 6}, {3, 6}, {4, 6}, {4, 6}};
  const std::vector<GuideIntent> expected = {
      GuideIntent::reference(PreferenceOrder::PCS), GuideIntent::decline(), GuideIntent::go(Direction::Right),
      GuideIntent::decline(), GuideIntent::confirm(), GuideIntent::reference(PreferenceOrder::PCS)};
  for (std::size_t t = 0; t < path.size(); ++t) {
    EXPECT_EQ(g.act(task.board, 1, path[t], static_cast<int>(t)), expected[t]) << "t=" << t;
  }
}

TEST(Guide, WaitThresholdWithLargeR) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(4);
  EXPECT_EQ(g.act(task.board, 1, {6, 6}, 0).kind, K::Reference);
  for (int t = 1; t < 4; ++t) EXPECT_EQ(g.act(task.board, 1, {6, 6}, t), GuideIntent::silence()) << t;
  EXPECT_EQ(g.act(task.board, 1, {6, 6}, 4).kind, K::Reference);
  for (int t = 5; t < 8; ++t) EXPECT_EQ(g.act(task.board, 1, {6, 6}, t), GuideIntent::silence());
  // (6,6) -> nearest tile (9,2): |dy| = 4 > |dx| = 3.
  EXPECT_EQ(g.act(task.board, 1, {6, 6}, 8), GuideIntent::go(Direction::Up));
}

TEST(Guide, DistanceThresholdWaitsForR) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(4);
  g.act(task.board, 1, {6, 6}, 0);
  const std::vector<Coord> path = {{7, 6}, {8, 6}, {9, 6}};
  for (std::size_t i = 0; i < path.size(); ++i) {
    EXPECT_EQ(g.act(task.board, 1, path[i], static_cast<int>(i) + 1), GuideIntent::silence());
  }
  EXPECT_EQ(g.act(task.board, 1, {9, 5}, 4), GuideIntent::confirm());
}

// R = 1: while the follower keeps moving, every step fires some rule.
TEST(Guide, NeverSilentWhileMovingWithROne) {
  const TaskInstance task = test::corner_task();
  HeuristicGuide g(1);
  Coord pos{6, 6};
  g.act(task.board, 1, pos, 0);
  const std::vector<Direction> walk = {Direction::Down, Direction::Down, Direction::Left, Direction::Up,
                                       Direction::Right, Direction::Right, Direction::Up, Direction::Up};
  for (std::size_t i = 0; i < walk.size(); ++i) {
    pos = move_gripper({pos}, walk[i], 12).position;
    EXPECT_NE(g.act(task.board, 1, pos, static_cast<int>(i) + 1).kind, K::Silence) << i;
  }
}

TEST(Guide, DirectionTiesGoHorizontal) {
  const Board b(12, {test::place(1, Shape::X, Color::Red, {4, 4}, 0, 12)});  // center (5,5)
  // Tiles (5,4),(4,5),(5,5),(6,5),(5,6).
  EXPECT_EQ(direction_to(b, 1, {3, 6}), Direction::Right);  // to (4,5): dx 1, dy -1
  EXPECT_EQ(direction_to(b, 1, {5, 0}), Direction::Down);
  EXPECT_EQ(direction_to(b, 1, {9, 5}), Direction::Left);
  EXPECT_DOUBLE_EQ(distance_to_piece(b, 1, {5, 0}), 4.0);
  EXPECT_DOUBLE_EQ(distance_to_piece(b, 1, {3, 6}), std::sqrt(2.0));
}

TEST(Guide, RejectsZeroThreshold) { EXPECT_THROW(HeuristicGuide(0), std::invalid_argument); }

}  // namespace
}  // namespace cogrip
