#include <gtest/gtest.h>

#include <algorithm>

#include "rearrange/executor.hpp"

namespace rearrange {
namespace {

ClosedLoopConfig mcts_loop(std::uint64_t seed) {
  ClosedLoopConfig cfg;
  cfg.planner.kind = PlannerKind::kMcts;
  cfg.planner.mcts.normalize_reward = false;
  cfg.seed = seed;
  return cfg;
}

TEST(ApplyPerturbation, MoveToCurrentPositionIsIdentity) {
  const Arrangement a{{0.1, 0.1}, {0.3, 0.2}};
  EXPECT_EQ(apply_perturbation(a, {0, 1, {0.3, 0.2}}, 0.03, Workspace{}), a);
}

TEST(ApplyPerturbation, DisplacingSolvedObjectLowersReward) {
  const Arrangement target{{0.1, 0.1}, {0.3, 0.2}};
  const Arrangement moved = apply_perturbation(target, {0, 0, {0.5, 0.3}}, 0.03, Workspace{});
  EXPECT_EQ(reward(moved, target, 0.015), 1u);
}

TEST(ApplyPerturbation, RejectsOccupiedOrOutsidePositions) {
  const Arrangement a{{0.1, 0.1}, {0.3, 0.2}};
  EXPECT_THROW(apply_perturbation(a, {0, 0, {0.31, 0.2}}, 0.03, Workspace{}), PerturbationError);
  EXPECT_THROW(apply_perturbation(a, {0, 0, {0.0, 0.2}}, 0.03, Workspace{}), PerturbationError);
  EXPECT_THROW(apply_perturbation(a, {0, 5, {0.5, 0.3}}, 0.03, Workspace{}), PerturbationError);
}

TEST(ApplyPerturbation, RandomValidDisplacementsKeepArrangementValid) {
  Rng g(12);
  const Instance inst = gen_random_instance(15, GenerationParams{}, g);
  Arrangement state = inst.initial;
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = rng.below(state.size());
    CollisionCounter ctr;
    const auto spot = sample_free_position(Obstacles(state, k), inst.radius, inst.workspace, rng,
                                           100, ctr);
    if (!spot) continue;
    state = apply_perturbation(state, {0, k, *spot}, inst.radius, inst.workspace);
    ASSERT_FALSE(arrangement_violation(state, inst.radius, inst.workspace));
  }
}

TEST(ValidateSchedule, RejectsOutOfRangeAndOutside) {
  Instance inst;
  inst.initial = {{0.1, 0.1}};
  inst.target = {{0.3, 0.3}};
  EXPECT_NO_THROW(validate_schedule(inst, {{1, 0, {0.5, 0.3}}}));
  EXPECT_THROW(validate_schedule(inst, {{1, 2, {0.5, 0.3}}}), PerturbationError);
  EXPECT_THROW(validate_schedule(inst, {{1, 0, {0.7, 0.3}}}), PerturbationError);
}

TEST(RunClosedLoop, AlreadySolvedTakesNoMotion) {
  Instance inst;
  inst.initial = {{0.1, 0.1}, {0.3, 0.2}};
  inst.target = inst.initial;
  const ExecTrace trace = run_closed_loop(inst, mcts_loop(0));
  EXPECT_TRUE(trace.success);
  EXPECT_EQ(trace.total_motions, 0u);
  EXPECT_EQ(trace.replans, 0u);
  ASSERT_EQ(trace.steps.size(), 1u);
}

TEST(RunClosedLoop, ReachesGoalWithoutPerturbations) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng g(seed);
    const Instance inst = gen_random_instance(10, GenerationParams{}, g);
    const ExecTrace trace = run_closed_loop(inst, mcts_loop(seed));
    ASSERT_TRUE(trace.success) << trace.stop_reason;
    EXPECT_EQ(trace.final_reward, 10u);
    EXPECT_EQ(trace.replans, trace.total_motions);
    // Every executed step leaves a valid arrangement.
    for (const ExecStep& s : trace.steps) {
      ASSERT_FALSE(arrangement_violation(s.before, inst.radius, inst.workspace));
    }
  }
}

TEST(RunClosedLoop, RecoversFromDisplacedFinishedObject) {
  Rng g(4);
  const Instance inst = gen_monotone_instance(6, GenerationParams{}, g).instance;
  ClosedLoopConfig cfg = mcts_loop(1);
  // Learn which object is finished after three motions, then knock it away.
  cfg.max_steps = 3;
  const ExecTrace probe = run_closed_loop(inst, cfg);
  ASSERT_EQ(probe.total_motions, 3u);
  std::size_t victim = inst.size();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (squared_distance(probe.final_state[i], inst.target[i]) <= inst.epsilon * inst.epsilon) {
      victim = i;
      break;
    }
  }
  ASSERT_LT(victim, inst.size());
  Arrangement blockers = probe.final_state;
  blockers.insert(blockers.end(), inst.target.begin(), inst.target.end());
  Rng rng(2);
  CollisionCounter ctr;
  const auto spot = sample_free_position(blockers, inst.radius, inst.workspace, rng, 1000, ctr);
  ASSERT_TRUE(spot.has_value());

  cfg.max_steps = 0;
  cfg.perturbations = {{3, victim, *spot}};
  const ExecTrace trace = run_closed_loop(inst, cfg);
  ASSERT_TRUE(trace.success) << trace.stop_reason;
  EXPECT_EQ(trace.final_reward, inst.size());
  EXPECT_EQ(trace.steps[3].perturbations.size(), 1u);
  EXPECT_GT(trace.total_motions, 6u);
}

TEST(RunClosedLoop, ReproducibleUnderSeed) {
  Rng g(9);
  const Instance inst = gen_random_instance(12, GenerationParams{}, g);
  const ExecTrace a = run_closed_loop(inst, mcts_loop(5));
  const ExecTrace b = run_closed_loop(inst, mcts_loop(5));
  EXPECT_EQ(trace_to_jsonl(a), trace_to_jsonl(b));
}

TEST(RunClosedLoop, InvalidPerturbationAtInjectionIsAnError) {
  Instance inst;
  inst.initial = {{0.1, 0.1}, {0.3, 0.2}};
  inst.target = {{0.5, 0.3}, {0.3, 0.35}};
  ClosedLoopConfig cfg = mcts_loop(0);
  cfg.perturbations = {{0, 0, {0.3, 0.2}}};
  EXPECT_THROW(run_closed_loop(inst, cfg), PerturbationError);
}

TEST(RunClosedLoop, StepLimitStopsUnsuccessfully) {
  Rng g(2);
  const Instance inst = gen_random_instance(10, GenerationParams{}, g);
  ClosedLoopConfig cfg = mcts_loop(0);
  cfg.max_steps = 2;
  const ExecTrace trace = run_closed_loop(inst, cfg);
  EXPECT_FALSE(trace.success);
  EXPECT_EQ(trace.total_motions, 2u);
}

TEST(RunClosedLoop, BaselinePlannerAlsoWorks) {
  Rng g(6);
  const Instance inst = gen_monotone_instance(8, GenerationParams{}, g).instance;
  ClosedLoopConfig cfg;
  cfg.planner.kind = PlannerKind::kBaseline;
  cfg.seed = 3;
  const ExecTrace trace = run_closed_loop(inst, cfg);
  EXPECT_TRUE(trace.success) << trace.stop_reason;
}

TEST(RunClosedLoop, ObservationNoiseKeepsTruthValid) {
  Rng g(10);
  const Instance inst = gen_random_instance(8, GenerationParams{}, g);
  ClosedLoopConfig cfg = mcts_loop(2);
  cfg.observation_noise = 0.002;
  cfg.max_steps = 60;
  const ExecTrace trace = run_closed_loop(inst, cfg);
  for (const ExecStep& s : trace.steps) {
    ASSERT_FALSE(arrangement_violation(s.before, inst.radius, inst.workspace));
  }
  ASSERT_FALSE(arrangement_violation(trace.final_state, inst.radius, inst.workspace));
}

TEST(TraceJsonl, RoundTripPreservesSteps) {
  Rng g(3);
  const Instance inst = gen_random_instance(5, GenerationParams{}, g);
  const ExecTrace trace = run_closed_loop(inst, mcts_loop(3));
  const std::string text = trace_to_jsonl(trace);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            trace.steps.size() + 1);
  EXPECT_EQ(trace_to_jsonl(trace_from_jsonl(text)), text);
  EXPECT_THROW(trace_from_jsonl("{\"type\":\"bogus\"}\n"), FormatError);
}

}  // namespace
}  // namespace rearrange
