#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "rearrange/arrangement.hpp"
#include "rearrange/mcts.hpp"
#include "rearrange/plan_result.hpp"

namespace rearrange {

struct BaselineConfig {
  std::uint64_t seed = 0;
  /// Collision-check budget for randperm_plan; a run that starts under the
  /// budget always completes.
  std::optional<std::uint64_t> collision_budget;
  /// Wall-clock limit per baseline run (and for the whole randperm loop).
  std::chrono::milliseconds time_limit{10000};
  MotionOptions motion;
};

/// One pass over a random permutation of the objects. For each object k not
/// yet at its target, every other object overlapping T_k is moved to its own
/// target when that is valid, otherwise to a sampled free position off T_k;
/// then k is moved to T_k. Fails if a relocation finds no free position or the
/// time limit expires.
PlanResult baseline_plan(const Instance& inst, const BaselineConfig& config);

/// Repeats the baseline with fresh permutations, drawn from one stream seeded
/// by config.seed, until the collision-check budget is spent; keeps the
/// shortest successful plan (earliest on ties). iterations = runs started.
PlanResult randperm_plan(const Instance& inst, const BaselineConfig& config);

}  // namespace rearrange
