#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rearrange/arrangement.hpp"
#include "rearrange/baseline.hpp"
#include "rearrange/mcts.hpp"

namespace rearrange {

/// Moves one object between two executed motions.
struct Perturbation {
  /// Closed-loop step at whose start the object is moved. A step is one
  /// replan plus at most one executed motion; step 0 precedes the first motion.
  std::uint64_t trigger_step = 0;
  std::size_t object = 0;
  Point2 new_position;
};

/// Raised when a perturbation cannot be applied.
class PerturbationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Relocates p.object to p.new_position. Throws PerturbationError if the
/// index is out of range or the new disc leaves the workspace or overlaps
/// another object.
Arrangement apply_perturbation(const Arrangement& state, const Perturbation& p, double radius,
                               const Workspace& ws);

/// Static checks that do not depend on the execution state: indices in range,
/// positions inside the workspace. Throws PerturbationError.
void validate_schedule(const Instance& inst, const std::vector<Perturbation>& schedule);

enum class PlannerKind { kMcts, kBaseline, kRandperm };

struct PlannerSpec {
  PlannerKind kind = PlannerKind::kMcts;
  SearchConfig mcts;
  BaselineConfig baseline;
};

/// Runs the selected planner; the planner seed is replaced by `seed`.
PlanResult run_planner(const Instance& inst, const PlannerSpec& spec, std::uint64_t seed);

struct ExecStep {
  std::uint64_t index = 0;
  /// Perturbations applied at the start of this step, before `before` is recorded.
  std::vector<Perturbation> perturbations;
  Arrangement before;
  /// Absent on the terminal step.
  std::optional<Motion> motion;
  /// Length of the plan computed at this step.
  std::size_t planned_length = 0;
};

struct ExecTrace {
  std::vector<ExecStep> steps;
  Arrangement final_state;
  std::size_t final_reward = 0;
  std::size_t total_motions = 0;
  std::size_t replans = 0;
  bool success = false;
  std::string stop_reason;
};

struct ClosedLoopConfig {
  PlannerSpec planner;
  std::vector<Perturbation> perturbations;
  /// 0 selects 2 * N + 5 * |perturbations|.
  std::uint64_t max_steps = 0;
  std::uint64_t seed = 0;
  /// Half-width of zero-mean uniform noise added to the arrangement the
  /// planner observes. The true state is never noisy.
  double observation_noise = 0.0;
};

std::uint64_t default_max_steps(std::size_t n_objects, std::size_t n_perturbations);

/// Closed loop: apply due perturbations, stop if solved, plan from the
/// current arrangement to the instance target, execute only the first
/// motion, repeat. Stops unsuccessfully on planner failure or at max_steps.
ExecTrace run_closed_loop(const Instance& inst, const ClosedLoopConfig& config);

}  // namespace rearrange

#include "rearrange/instance_io.hpp"

namespace rearrange {

Json perturbation_to_json(const Perturbation& p);
Perturbation perturbation_from_json(const Json& j);
/// Accepts either an array of perturbations or {"perturbations": [...]}.
std::vector<Perturbation> schedule_from_json(const Json& j);

/// One {"type": "step", ...} line per step, then one {"type": "summary", ...} line.
std::string trace_to_jsonl(const ExecTrace& trace);
ExecTrace trace_from_jsonl(const std::string& text);

}  // namespace rearrange
