#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rearrange/geometry.hpp"

namespace rearrange {
namespace {

const Workspace kTable{0.0, 0.6, 0.0, 0.4};

TEST(DiscsOverlap, CoincidentPointsOverlap) {
  EXPECT_TRUE(discs_overlap({0, 0}, {0, 0}, 0.03));
}

TEST(DiscsOverlap, TangentDiscsDoNotOverlap) {
  EXPECT_FALSE(discs_overlap({0, 0}, {0.06, 0}, 0.03));
}

TEST(DiscsOverlap, JustInsideTangencyOverlaps) {
  EXPECT_TRUE(discs_overlap({0, 0}, {0.059, 0}, 0.03));
}

TEST(DiscsOverlap, IsSymmetric) {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Point2 a{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
    const Point2 b{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
    const double r = rng.uniform(0.001, 0.05);
    ASSERT_EQ(discs_overlap(a, b, r), discs_overlap(b, a, r));
  }
}

TEST(InWorkspace, Center) { EXPECT_TRUE(in_workspace({0.3, 0.2}, 0.03, kTable)); }

TEST(InWorkspace, DiscCrossesLeftEdge) { EXPECT_FALSE(in_workspace({0.02, 0.2}, 0.03, kTable)); }

TEST(InWorkspace, BoundaryTangentIsInside) {
  EXPECT_TRUE(in_workspace({0.03, 0.03}, 0.03, kTable));
}

TEST(InWorkspace, MonotoneInRadius) {
  Rng rng(9);
  for (int i = 0; i < 2000; ++i) {
    const Point2 p{rng.uniform(-0.05, 0.65), rng.uniform(-0.05, 0.45)};
    const double r = rng.uniform(0.001, 0.1);
    if (in_workspace(p, r, kTable)) {
      ASSERT_TRUE(in_workspace(p, r * rng.uniform01(), kTable));
    }
  }
}

TEST(IsPlacementValid, EmptySceneIsValid) {
  CollisionCounter ctr;
  EXPECT_TRUE(is_placement_valid(std::span<const Point2>{}, {0.3, 0.2}, 0.03, kTable, ctr));
  EXPECT_EQ(ctr.count(), 1u);
}

TEST(IsPlacementValid, CoincidentIsInvalidAndStillCounted) {
  CollisionCounter ctr;
  const std::vector<Point2> others{{0.3, 0.2}};
  EXPECT_FALSE(is_placement_valid(others, {0.3, 0.2}, 0.03, kTable, ctr));
  EXPECT_EQ(ctr.count(), 1u);
}

TEST(IsPlacementValid, SeparatedDiscsAreValid) {
  CollisionCounter ctr;
  const std::vector<Point2> others{{0.10, 0.10}};
  EXPECT_TRUE(is_placement_valid(others, {0.20, 0.10}, 0.03, kTable, ctr));
}

TEST(IsPlacementValid, OutsideWorkspaceIsInvalid) {
  CollisionCounter ctr;
  EXPECT_FALSE(is_placement_valid(std::span<const Point2>{}, {0.01, 0.2}, 0.03, kTable, ctr));
  EXPECT_EQ(ctr.count(), 1u);
}

TEST(IsPlacementValid, ObstaclesSkipAndExtra) {
  CollisionCounter ctr;
  const std::vector<Point2> pts{{0.1, 0.1}, {0.3, 0.2}};
  const std::vector<Point2> extra{{0.5, 0.3}};
  // Index 1 sits on the candidate but is skipped.
  EXPECT_TRUE(is_placement_valid(Obstacles(pts, 1), {0.3, 0.2}, 0.03, kTable, ctr));
  EXPECT_FALSE(is_placement_valid(Obstacles(pts, 1, extra), {0.5, 0.3}, 0.03, kTable, ctr));
  EXPECT_EQ(ctr.count(), 2u);
}

TEST(SampleFreePosition, EmptySceneTakesOneCheck) {
  for (std::uint64_t seed : {0u, 1u, 77u}) {
    CollisionCounter ctr;
    Rng rng(seed);
    const auto p = sample_free_position(std::span<const Point2>{}, 0.03, kTable, rng, 100, ctr);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(ctr.count(), 1u);
  }
}

TEST(SampleFreePosition, TiledWorkspaceExhaustsTries) {
  // A 0.05 grid of r = 0.03 discs leaves no room for another disc anywhere.
  std::vector<Point2> tiles;
  for (double x = 0.0; x <= 0.6 + 1e-9; x += 0.05) {
    for (double y = 0.0; y <= 0.4 + 1e-9; y += 0.05) tiles.push_back({x, y});
  }
  CollisionCounter ctr;
  Rng rng(3);
  EXPECT_FALSE(sample_free_position(tiles, 0.03, kTable, rng, 100, ctr).has_value());
  EXPECT_EQ(ctr.count(), 100u);
}

TEST(SampleFreePosition, GoldenValueForSeed42) {
  const std::vector<Point2> others{{0.3, 0.2}};
  CollisionCounter ctr;
  Rng rng(42);
  const auto p = sample_free_position(others, 0.03, kTable, rng, 100, ctr);
  ASSERT_TRUE(p.has_value());
  // Frozen from the first run of the mt19937_64-backed stream.
  EXPECT_DOUBLE_EQ(p->x, 0.43778398779545102);
  EXPECT_DOUBLE_EQ(p->y, 0.24727067391059709);
  EXPECT_EQ(ctr.count(), 1u);
}

TEST(SampleFreePosition, ReturnedPointsAreValidAndCountMatchesTries) {
  Rng scene_rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point2> others;
    const int k = static_cast<int>(scene_rng.below(40));
    for (int i = 0; i < k; ++i) {
      others.push_back({scene_rng.uniform(0.0, 0.6), scene_rng.uniform(0.0, 0.4)});
    }
    CollisionCounter ctr;
    Rng rng(static_cast<std::uint64_t>(trial));
    const auto p = sample_free_position(others, 0.03, kTable, rng, 50, ctr);
    if (p) {
      CollisionCounter probe;
      ASSERT_TRUE(is_placement_valid(others, *p, 0.03, kTable, probe));
      ASSERT_GE(ctr.count(), 1u);
      ASSERT_LE(ctr.count(), 50u);
    } else {
      ASSERT_EQ(ctr.count(), 50u);
    }
  }
}

TEST(SampleFreePosition, WindowRestrictsSamples) {
  CollisionCounter ctr;
  Rng rng(8);
  const SamplingWindow window{{0.2, 0.2}, 0.05};
  for (int i = 0; i < 200; ++i) {
    const auto p = sample_free_position(std::span<const Point2>{}, 0.03, kTable, rng, 10, ctr, window);
    ASSERT_TRUE(p.has_value());
    EXPECT_LE(std::abs(p->x - 0.2), 0.05);
    EXPECT_LE(std::abs(p->y - 0.2), 0.05);
  }
}

TEST(SampleFreePosition, RejectsZeroTries) {
  CollisionCounter ctr;
  Rng rng(1);
  EXPECT_THROW(sample_free_position(std::span<const Point2>{}, 0.03, kTable, rng, 0, ctr),
               ContractViolation);
}

TEST(Workspace, ValidateRejectsDegenerateBounds) {
  EXPECT_NO_THROW(kTable.validate(0.03));
  EXPECT_THROW((Workspace{0.0, 0.05, 0.0, 0.4}.validate(0.03)), std::invalid_argument);
  EXPECT_THROW((Workspace{0.6, 0.0, 0.0, 0.4}.validate(0.03)), std::invalid_argument);
  EXPECT_THROW(kTable.validate(0.0), std::invalid_argument);
}

TEST(Rng, PermutationIsABijection) {
  Rng rng(2);
  auto perm = rng.permutation(37);
  std::sort(perm.begin(), perm.end());
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(perm[i], i);
}

TEST(Rng, SplitDoesNotAdvanceParent) {
  Rng a(10);
  Rng b(10);
  (void)a.split(3);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(derive_seed(10, 0), derive_seed(10, 1));
}

}  // namespace
}  // namespace rearrange
