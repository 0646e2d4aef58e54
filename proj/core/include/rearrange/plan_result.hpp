#pragma once

#include <chrono>
#include <cstdint>

#include "rearrange/arrangement.hpp"

namespace rearrange {

/// Outcome and cost metrics of one planner invocation.
struct PlanResult {
  bool solved = false;
  Plan plan;
  /// MCTS: search iterations. Baselines: number of permutations tried.
  std::uint64_t iterations = 0;
  std::uint64_t collision_checks = 0;
  std::chrono::nanoseconds wall_time{0};

  double wall_time_ms() const noexcept {
    return std::chrono::duration<double, std::milli>(wall_time).count();
  }
};

}  // namespace rearrange
