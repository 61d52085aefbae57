#include <gtest/gtest.h>

#include <queue>

#include "cogrip/follower.hpp"
#include "cogrip/rng.hpp"
#include "support.hpp"

namespace cogrip {
namespace {

using FA = FollowerAction;

TEST(Classify, Examples) {
  EXPECT_EQ(classify(""), Category::Silence);
  EXPECT_EQ(classify("go left"), Category::Directive);
  EXPECT_EQ(classify("take the green w"), Category::Reference);
  EXPECT_EQ(classify("yes this way"), Category::Confirm);
  EXPECT_EQ(classify("not this piece"), Category::Decline);
  EXPECT_EQ(classify("take it"), Category::Directive);
  EXPECT_EQ(classify("take blue t"), Category::Directive);
  EXPECT_EQ(classify("take"), Category::Directive);
  EXPECT_EQ(classify("blue"), Category::Reference);
  EXPECT_EQ(classify("top right"), Category::Reference);
}

TEST(Classify, ParsesContent) {
  const ParsedUtterance r = parse_utterance("take the green w at bottom left");
  EXPECT_EQ(r.descriptor.color, Color::Green);
  EXPECT_EQ(r.descriptor.shape, Shape::W);
  EXPECT_EQ(r.descriptor.area, Area::BottomLeft);
  const ParsedUtterance p = parse_utterance("take the piece at center");
  EXPECT_FALSE(p.descriptor.has_appearance());
  EXPECT_EQ(p.descriptor.area, Area::Center);
  EXPECT_EQ(parse_utterance("go down").direction, Direction::Down);
  EXPECT_TRUE(parse_utterance("take it").take);
}

TEST(Classify, UnknownTextIsSilence) {
  const ParsedUtterance u = parse_utterance("hello there");
  EXPECT_EQ(u.category, Category::Silence);
  EXPECT_FALSE(u.understood);
  HeuristicFollower f({}, 12);
  Rng rng(1);
  f.act("hello there", partial_view(Board(12, {}), {6, 6}), {6, 6}, rng);
  EXPECT_EQ(f.not_understood(), 1u);
}

TEST(Confidence, Values) {
  EXPECT_DOUBLE_EQ(confidence(0, 0.99, 0.5), 1.0);
  EXPECT_NEAR(confidence(5, 0.99, 0.5), 0.951, 5e-4);
  for (int i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(confidence(i, 1.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(confidence(200, 0.99, 0.5), 0.5);
}

TEST(Descriptor, MergeKeepsAbsentFields) {
  TargetDescriptor d;
  d.merge({Color::Blue, std::nullopt, std::nullopt});
  d.merge({std::nullopt, Shape::T, std::nullopt});
  EXPECT_EQ(d, (TargetDescriptor{Color::Blue, Shape::T, std::nullopt}));
  d.merge({Color::Red, std::nullopt, Area::Center});
  EXPECT_EQ(d, (TargetDescriptor{Color::Red, Shape::T, Area::Center}));
}

TEST(PlanPath, Examples) {
  const SymbolicView v = partial_view(Board(12, {}), {6, 6});
  EXPECT_TRUE(plan_path(v, 3, 3).empty());
  EXPECT_EQ(plan_path(v, 5, 3), (std::vector<FA>{FA::Right, FA::Right}));
  EXPECT_EQ(plan_path(v, 6, 6).size(), 6u);
}

// Independent BFS over the view grid, checked against plan lengths and
// validity of every step for all targets at all gripper positions.
TEST(PlanPath, MatchesBfsOracle) {
  const TaskInstance task = test::corner_task();
  for (int gy = 0; gy < 12; gy += 1) {
    for (int gx = 0; gx < 12; gx += 1) {
      const SymbolicView v = partial_view(task.board, {gx, gy});
      std::array<int, 49> dist;
      dist.fill(-1);
      std::queue<int> q;
      dist[24] = 0;
      q.push(24);
      while (!q.empty()) {
        const int c = q.front();
        q.pop();
        const int col = c % 7, row = c / 7;
        const int dc[4] = {-1, 1, 0, 0}, dr[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int nc = col + dc[k], nr = row + dr[k];
          if (nc < 0 || nr < 0 || nc >= 7 || nr >= 7 || !v.in_world(nc, nr)) continue;
          const int n = nr * 7 + nc;
          if (dist[n] < 0) {
            dist[n] = dist[c] + 1;
            q.push(n);
          }
        }
      }
      for (int cell = 0; cell < 49; ++cell) {
        const int col = cell % 7, row = cell / 7;
        const auto plan = plan_path(v, col, row);
        if (dist[cell] < 0) {
          ASSERT_TRUE(plan.empty());
          continue;
        }
        ASSERT_EQ(static_cast<int>(plan.size()), std::min(dist[cell], 6));
        Coord pos{gx, gy};
        for (FA a : plan) {
          pos = pos + offset(*direction_of(a));
          ASSERT_TRUE(task.board.contains(pos));
        }
        if (dist[cell] <= 6) ASSERT_EQ(pos, v.world(col, row));
      }
    }
  }
}

TEST(Follower, SeededTraceExample) {
  HeuristicFollower f({0.99, 0.5}, 12);
  f.set_plan({FA::Up, FA::Up, FA::Right});
  ASSERT_EQ(f.plan().size(), 3u);
  EXPECT_NEAR(f.plan()[0].confidence, 0.99, 1e-12);
  EXPECT_NEAR(f.plan()[1].confidence, 0.98, 1e-3);
  EXPECT_NEAR(f.plan()[2].confidence, 0.97, 1e-3);

  // Find seeds whose first draw is 0.5-ish and above 0.99 respectively.
  std::optional<std::uint64_t> low, high;
  for (std::uint64_t s = 0; s < 10000 && (!low || !high); ++s) {
    const double u = Rng(s).uniform();
    if (!low && u > 0.45 && u < 0.55) low = s;
    if (!high && u >= 0.99) high = s;
  }
  ASSERT_TRUE(low && high);
  const SymbolicView v = partial_view(Board(12, {}), {6, 6});
  Rng r1(*low);
  EXPECT_EQ(f.act("", v, {6, 6}, r1), FA::Up);
  EXPECT_EQ(f.plan().size(), 2u);

  HeuristicFollower g({0.99, 0.5}, 12);
  g.set_plan({FA::Up, FA::Up, FA::Right});
  Rng r2(*high);
  EXPECT_EQ(g.act("", v, {6, 6}, r2), FA::Wait);  // hesitation consumes the action
  EXPECT_EQ(g.plan().size(), 2u);
}

TEST(Follower, DeclineWaitsAndClears) {
  HeuristicFollower f({}, 12);
  f.set_plan({FA::Up, FA::Up});
  Rng rng(1);
  EXPECT_EQ(f.act("not this piece", partial_view(Board(12, {}), {6, 6}), {6, 6}, rng), FA::Wait);
  EXPECT_TRUE(f.plan().empty());
}

TEST(Follower, TakeItOverAPiece) {
  const TaskInstance task = test::corner_task();
  HeuristicFollower f({}, 12);
  f.set_plan({FA::Up});
  Rng rng(1);
  EXPECT_EQ(f.act("take it", partial_view(task.board, {9, 1}), {9, 1}, rng), FA::Take);
  EXPECT_TRUE(f.plan().empty());
}

TEST(Follower, ConfirmNeverHesitates) {
  const SymbolicView v = partial_view(Board(12, {}), {6, 6});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    HeuristicFollower f({0.5, 0.0}, 12);
    f.set_plan({FA::Up, FA::Up, FA::Up, FA::Up, FA::Up, FA::Up});
    Rng rng(seed);
    ASSERT_EQ(f.act("yes this way", v, {6, 6}, rng), FA::Up);
    for (const PlannedAction& p : f.plan()) ASSERT_DOUBLE_EQ(p.confidence, 1.0);
    while (!f.plan().empty()) ASSERT_EQ(f.act("", v, {6, 6}, rng), FA::Up);
  }
}

TEST(Follower, DirectiveFillsTowardsTheEdge) {
  HeuristicFollower f({}, 12);
  Rng rng(1);
  const Coord g{9, 5};
  EXPECT_EQ(f.act("go right", partial_view(Board(12, {}), g), g, rng), FA::Right);
  EXPECT_EQ(f.plan().size(), 1u);  // (10,5) -> (11,5)
  HeuristicFollower h({}, 12);
  EXPECT_EQ(h.act("go left", partial_view(Board(12, {}), {6, 6}), {6, 6}, rng), FA::Left);
  EXPECT_EQ(h.plan().size(), 5u);
}

TEST(Follower, ReferenceToUnreachedAreaHeadsThere) {
  const TaskInstance task = test::corner_task();
  HeuristicFollower f({1.0, 1.0}, 12);
  Rng rng(1);
  const FA first = f.act("take the piece at top right", partial_view(task.board, {6, 6}), {6, 6}, rng);
  // Nearest top-right cell from (6,6) is (8,3): dx 2, dy -3.
  EXPECT_EQ(first, FA::Up);
  EXPECT_EQ(f.plan().size(), 4u);
  EXPECT_EQ(f.descriptor().area, Area::TopRight);
}

TEST(Follower, ReferenceInsideAreaPathsToMatchingPiece) {
  const TaskInstance task = test::corner_task();
  HeuristicFollower f({1.0, 1.0}, 12);
  Rng rng(1);
  // From (11,3) the blue T's nearest tile in BFS order is (9,2) or (10,0)...
  Coord pos{11, 3};
  FA a = f.act("take the blue t", partial_view(task.board, pos), pos, rng);
  int steps = 0;
  while (a != FA::Wait && steps < 10) {
    pos = pos + offset(*direction_of(a));
    ++steps;
    a = f.act("", partial_view(task.board, pos), pos, rng);
  }
  EXPECT_EQ(task.board.piece_at(pos), 1);
  EXPECT_EQ(steps, 3);  // (11,3) -> (9,2) is 3 moves
}

TEST(Follower, AreaOnlyReferenceApproachesARandomVisiblePiece) {
  // Two pieces in the center area; the follower picks either.
  const TaskInstance task = test::make_task({
      test::place(1, Shape::P, Color::Red, {4, 4}, 0, 12),
      test::place(2, Shape::U, Color::Blue, {6, 4}, 1, 12),
      test::place(3, Shape::X, Color::Green, {0, 0}, 0, 12),
      test::place(4, Shape::W, Color::Yellow, {8, 8}, 0, 12),
  });
  std::set<int> reached;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    HeuristicFollower f({1.0, 1.0}, 12);
    Rng rng(seed);
    Coord pos{6, 6};
    FA a = f.act("take the piece at center", partial_view(task.board, pos), pos, rng);
    for (int i = 0; i < 8 && a != FA::Wait; ++i) {
      pos = pos + offset(*direction_of(a));
      a = f.act("", partial_view(task.board, pos), pos, rng);
    }
    reached.insert(task.board.piece_at(pos));
  }
  EXPECT_TRUE(reached.count(1) || reached.count(2));
  EXPECT_EQ(reached.count(0), 0u);
  EXPECT_EQ(reached.count(3) + reached.count(4), 0u);
}

TEST(Follower, WordLevelFragmentsAccumulate) {
  HeuristicFollower f({}, 12);
  Rng rng(2);
  const SymbolicView v = partial_view(Board(12, {}), {6, 6});
  f.act("blue", v, {6, 6}, rng);
  f.act("t", v, {6, 6}, rng);
  f.act("top right", v, {6, 6}, rng);
  EXPECT_EQ(f.descriptor(), (TargetDescriptor{Color::Blue, Shape::T, Area::TopRight}));
}

TEST(Follower, PlansNeverExceedSix) {
  const TaskInstance task = test::corner_task();
  Rng rng(5);
  HeuristicFollower f({}, 12);
  const std::vector<std::string> utterances = {"go left", "take the blue t", "take the piece at bottom left",
                                               "", "yes this way", "go up", "take the red piece", ""};
  Coord pos{6, 6};
  for (int i = 0; i < 400; ++i) {
    const auto& u = utterances[rng.below(utterances.size())];
    const FA a = f.act(u, partial_view(task.board, pos), pos, rng);
    ASSERT_LE(f.plan().size(), 6u);
    for (std::size_t k = 1; k < f.plan().size(); ++k) ASSERT_LE(f.plan()[k].confidence, f.plan()[k - 1].confidence);
    if (auto d = direction_of(a)) pos = move_gripper({pos}, *d, 12).position;
  }
}

}  // namespace
}  // namespace cogrip
