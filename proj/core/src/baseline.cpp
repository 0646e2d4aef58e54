#include "rearrange/baseline.hpp"


namespace rearrange {

namespace {

using Clock = std::chrono::steady_clock;

struct RunOutcome {
  bool solved = false;
  Plan plan;
};

RunOutcome run_once(const Instance& inst, const BaselineConfig& config, Rng& rng,
                    CollisionCounter& ctr, Clock::time_point deadline) {
  RunOutcome out;
  Arrangement state = inst.initial;
  const double eps2 = inst.epsilon * inst.epsilon;
  auto at_target = [&](std::size_t i) { return squared_distance(state[i], inst.target[i]) <= eps2; };
  auto move = [&](std::size_t i, Point2 place) {
    out.plan.push_back(Motion{i, state[i], place});
    state[i] = place;
  };

  for (std::size_t k : rng.permutation(inst.size())) {
    if (Clock::now() > deadline) return out;
    if (at_target(k)) continue;
    const Point2 goal = inst.target[k];

    for (std::size_t j = 0; j < state.size(); ++j) {
      if (j == k || !discs_overlap(state[j], goal, inst.radius)) continue;
      if (is_placement_valid(Obstacles(state, j), inst.target[j], inst.radius, inst.workspace,
                             ctr)) {
        move(j, inst.target[j]);
        continue;
      }
      std::vector<Point2> keep_clear{goal};
      if (config.motion.avoid_other_targets) {
        for (std::size_t i = 0; i < inst.size(); ++i) {
          if (i != k && i != j) keep_clear.push_back(inst.target[i]);
        }
      }
      std::optional<SamplingWindow> window;
      if (config.motion.neighborhood_half_extent) {
        window = SamplingWindow{state[j], *config.motion.neighborhood_half_extent};
      }
      const auto spot =
          sample_free_position(Obstacles(state, j, keep_clear), inst.radius, inst.workspace, rng,
                               config.motion.find_position_tries, ctr, window);
      if (!spot) return out;
      move(j, *spot);
    }

    if (!is_placement_valid(Obstacles(state, k), goal, inst.radius, inst.workspace, ctr)) {
      return out;
    }
    move(k, goal);
  }
  out.solved = is_solved(state, inst.target, inst.epsilon);
  return out;
}

std::chrono::nanoseconds elapsed_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

}  // namespace

PlanResult baseline_plan(const Instance& inst, const BaselineConfig& config) {
  validate_instance(inst);
  const auto start = Clock::now();
  Rng rng(config.seed);
  CollisionCounter ctr;
  PlanResult result;
  RunOutcome run = run_once(inst, config, rng, ctr, start + config.time_limit);
  result.solved = run.solved;
  if (run.solved) result.plan = std::move(run.plan);
  result.iterations = 1;
  result.collision_checks = ctr.count();
  result.wall_time = elapsed_since(start);
  return result;
}

PlanResult randperm_plan(const Instance& inst, const BaselineConfig& config) {
  if (!config.collision_budget) {
    throw std::invalid_argument("randperm_plan requires a collision budget");
  }
  if (*config.collision_budget < 1) throw std::invalid_argument("collision budget must be >= 1");
  validate_instance(inst);

  const auto start = Clock::now();
  const auto deadline = start + config.time_limit;
  Rng rng(config.seed);
  CollisionCounter ctr;
  PlanResult result;
  std::optional<Plan> best;

  do {
    RunOutcome run = run_once(inst, config, rng, ctr, deadline);
    ++result.iterations;
    if (run.solved && (!best || run.plan.size() < best->size())) best = std::move(run.plan);
    // Already solved (0 motions) cannot be improved on.
    if (best && best->empty()) break;
  } while (ctr.count() < *config.collision_budget && Clock::now() <= deadline);

  result.solved = best.has_value();
  if (best) result.plan = std::move(*best);
  result.collision_checks = ctr.count();
  result.wall_time = elapsed_since(start);
  return result;
}

}  // namespace rearrange
