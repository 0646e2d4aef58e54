#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rearrange/geometry.hpp"
#include "rearrange/random.hpp"

namespace rearrange {

inline constexpr double kDefaultEpsilon = 0.015;
inline constexpr int kDefaultGenerationBudget = 5000;
inline constexpr int kDefaultBufferProbes = 1000;

/// One 2D position per object index.
using Arrangement = std::vector<Point2>;

struct Instance {
  Arrangement initial;
  Arrangement target;
  Workspace workspace;
  double radius = kDefaultRadius;
  double epsilon = kDefaultEpsilon;

  std::size_t size() const noexcept { return initial.size(); }
};

/// A single pick-and-place of object `object`.
struct Motion {
  std::size_t object = 0;
  Point2 pick;
  Point2 place;

  bool is_noop() const noexcept { return pick == place; }

  friend bool operator==(const Motion&, const Motion&) = default;
};

using Plan = std::vector<Motion>;

/// Raised when rejection sampling cannot fit the requested number of objects.
class InfeasibleDensityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Number of objects within epsilon (inclusive) of their target.
std::size_t reward(std::span<const Point2> current, std::span<const Point2> target,
                   double epsilon);

bool is_solved(std::span<const Point2> current, std::span<const Point2> target, double epsilon);

/// Copy of `a` with `m.object` moved to `m.place`. Throws ContractViolation
/// if `m.pick` is not the object's current position (a stale plan).
Arrangement apply_motion(const Arrangement& a, const Motion& m);

/// Empty if every object is inside the workspace and no two discs overlap;
/// otherwise a description of the first violation.
std::optional<std::string> arrangement_violation(const Arrangement& a, double radius,
                                                 const Workspace& ws);

/// Checks sizes, epsilon, workspace and both arrangements. Throws std::invalid_argument.
void validate_instance(const Instance& inst);

struct ReplayReport {
  bool valid = true;
  std::size_t final_reward = 0;
  std::string error;
};

/// Applies `plan` to `inst.initial`, checking every intermediate arrangement
/// and that the plan contains no no-op motion.
ReplayReport replay_plan(const Instance& inst, const Plan& plan);

struct GenerationParams {
  Workspace workspace;
  double radius = kDefaultRadius;
  double epsilon = kDefaultEpsilon;
  int attempt_budget = kDefaultGenerationBudget;
};

/// Random initial and target arrangements, each built by sequential rejection
/// sampling. Throws InfeasibleDensityError when the budget runs out.
Instance gen_random_instance(std::size_t n, const GenerationParams& params, Rng& rng);

struct MonotoneInstance {
  Instance instance;
  /// The construction moves; replaying them solves the instance in n motions.
  Plan witness;
};

/// Random initial arrangement; objects are then relocated one at a time, in a
/// random order, to free positions of the evolving arrangement. The final
/// arrangement is the target. Each new position is checked against every
/// current disc including the moving object's own, so no object starts within
/// epsilon of its target.
MonotoneInstance gen_monotone_instance(std::size_t n, const GenerationParams& params, Rng& rng);

/// Monte-Carlo probe: true iff some sampled position fits in the workspace
/// without overlapping any initial or target disc.
bool buffer_space_available(const Instance& inst, Rng& rng, int probes = kDefaultBufferProbes);

}  // namespace rearrange
