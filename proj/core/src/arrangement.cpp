#include "rearrange/arrangement.hpp"

#include <cmath>
#include <sstream>

namespace rearrange {

std::size_t reward(std::span<const Point2> current, std::span<const Point2> target,
                   double epsilon) {
  if (current.size() != target.size()) {
    throw ContractViolation("reward: arrangements differ in object count");
  }
  const double eps2 = epsilon * epsilon;
  std::size_t count = 0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (squared_distance(current[i], target[i]) <= eps2) ++count;
  }
  return count;
}

bool is_solved(std::span<const Point2> current, std::span<const Point2> target, double epsilon) {
  return reward(current, target, epsilon) == target.size();
}

Arrangement apply_motion(const Arrangement& a, const Motion& m) {
  if (m.object >= a.size()) throw ContractViolation("apply_motion: object index out of range");
  if (!(a[m.object] == m.pick)) {
    throw ContractViolation("apply_motion: pick position does not match object " +
                            std::to_string(m.object));
  }
  Arrangement next = a;
  next[m.object] = m.place;
  return next;
}

std::optional<std::string> arrangement_violation(const Arrangement& a, double radius,
                                                 const Workspace& ws) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i].x) || !std::isfinite(a[i].y)) {
      return "object " + std::to_string(i) + " has a non-finite position";
    }
    if (!in_workspace(a[i], radius, ws)) {
      return "object " + std::to_string(i) + " leaves the workspace";
    }
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (discs_overlap(a[i], a[j], radius)) {
        return "objects " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
      }
    }
  }
  return std::nullopt;
}

void validate_instance(const Instance& inst) {
  inst.workspace.validate(inst.radius);
  if (!(inst.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (inst.initial.size() != inst.target.size()) {
    throw std::invalid_argument("initial and target arrangements differ in object count");
  }
  if (auto err = arrangement_violation(inst.initial, inst.radius, inst.workspace)) {
    throw std::invalid_argument("initial arrangement: " + *err);
  }
  if (auto err = arrangement_violation(inst.target, inst.radius, inst.workspace)) {
    throw std::invalid_argument("target arrangement: " + *err);
  }
}

ReplayReport replay_plan(const Instance& inst, const Plan& plan) {
  ReplayReport report;
  Arrangement state = inst.initial;
  for (std::size_t step = 0; step < plan.size(); ++step) {
    const Motion& m = plan[step];
    if (m.is_noop()) {
      report.valid = false;
      report.error = "motion " + std::to_string(step) + " is a no-op";
      break;
    }
    try {
      state = apply_motion(state, m);
    } catch (const ContractViolation& e) {
      report.valid = false;
      report.error = "motion " + std::to_string(step) + ": " + e.what();
      break;
    }
    if (auto err = arrangement_violation(state, inst.radius, inst.workspace)) {
      report.valid = false;
      report.error = "after motion " + std::to_string(step) + ": " + *err;
      break;
    }
  }
  report.final_reward = reward(state, inst.target, inst.epsilon);
  return report;
}

namespace {

// Places n discs one at a time; `budget` bounds the total number of samples.
Arrangement sample_arrangement(std::size_t n, const GenerationParams& params, Rng& rng) {
  Arrangement placed;
  placed.reserve(n);
  CollisionCounter unused;
  int remaining = params.attempt_budget;
  while (placed.size() < n) {
    if (remaining <= 0) {
      std::ostringstream msg;
      msg << "infeasible density: placed " << placed.size() << " of " << n
          << " objects within " << params.attempt_budget << " attempts";
      throw InfeasibleDensityError(msg.str());
    }
    const Point2 candidate{
        rng.uniform(params.workspace.x_min + params.radius, params.workspace.x_max - params.radius),
        rng.uniform(params.workspace.y_min + params.radius, params.workspace.y_max - params.radius)};
    --remaining;
    if (is_placement_valid(std::span<const Point2>(placed), candidate, params.radius,
                           params.workspace, unused)) {
      placed.push_back(candidate);
    }
  }
  return placed;
}

void check_generation_args(std::size_t n, const GenerationParams& params) {
  if (n < 1) throw ContractViolation("instance generation requires n >= 1");
  params.workspace.validate(params.radius);
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

}  // namespace

Instance gen_random_instance(std::size_t n, const GenerationParams& params, Rng& rng) {
  check_generation_args(n, params);
  Instance inst;
  inst.workspace = params.workspace;
  inst.radius = params.radius;
  inst.epsilon = params.epsilon;
  inst.initial = sample_arrangement(n, params, rng);
  inst.target = sample_arrangement(n, params, rng);
  return inst;
}

MonotoneInstance gen_monotone_instance(std::size_t n, const GenerationParams& params, Rng& rng) {
  check_generation_args(n, params);
  MonotoneInstance out;
  Instance& inst = out.instance;
  inst.workspace = params.workspace;
  inst.radius = params.radius;
  inst.epsilon = params.epsilon;
  inst.initial = sample_arrangement(n, params, rng);

  Arrangement current = inst.initial;
  CollisionCounter unused;
  int remaining = params.attempt_budget;
  for (std::size_t k : rng.permutation(n)) {
    std::optional<Point2> spot;
    while (!spot) {
      if (remaining <= 0) {
        throw InfeasibleDensityError("infeasible density: could not relocate object " +
                                     std::to_string(k) + " while building a monotone target");
      }
      --remaining;
      // The moving object stays in the obstacle set: its target never
      // overlaps its own start.
      spot = sample_free_position(std::span<const Point2>(current), params.radius,
                                  params.workspace, rng, 1, unused);
    }
    out.witness.push_back(Motion{k, current[k], *spot});
    current[k] = *spot;
  }
  inst.target = std::move(current);
  return out;
}

bool buffer_space_available(const Instance& inst, Rng& rng, int probes) {
  if (probes < 1) throw ContractViolation("buffer_space_available: probes must be >= 1");
  Arrangement occupied = inst.initial;
  occupied.insert(occupied.end(), inst.target.begin(), inst.target.end());
  CollisionCounter unused;
  return sample_free_position(std::span<const Point2>(occupied), inst.radius, inst.workspace, rng,
                              probes, unused)
      .has_value();
}

}  // namespace rearrange
