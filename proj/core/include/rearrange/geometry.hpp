#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rearrange/random.hpp"

namespace rearrange {

/// Thrown when a documented precondition does not hold.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b) noexcept;
double squared_distance(Point2 a, Point2 b) noexcept;

/// Axis-aligned tabletop rectangle, in meters.
struct Workspace {
  double x_min = 0.0;
  double x_max = 0.60;
  double y_min = 0.0;
  double y_max = 0.40;

  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }

  /// Throws std::invalid_argument unless both spans exceed 2 * radius.
  void validate(double radius) const;

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

inline constexpr double kDefaultRadius = 0.03;
inline constexpr int kDefaultFindPositionTries = 100;

/// Number of placement validity evaluations performed by one search.
class CollisionCounter {
public:
  void increment() noexcept { ++count_; }
  void reset() noexcept { count_ = 0; }
  std::uint64_t count() const noexcept { return count_; }

private:
  std::uint64_t count_ = 0;
};

/// Obstacle set for a placement query: every point of `points` except index
/// `skip`, plus every point of `extra`. Lets callers express sets like
/// {C_i, i != j} U {T_k} without copying the arrangement.
struct Obstacles {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::span<const Point2> points;
  std::size_t skip = kNone;
  std::span<const Point2> extra = {};

  Obstacles() = default;
  Obstacles(std::span<const Point2> pts) : points(pts) {}             // NOLINT(implicit)
  Obstacles(const std::vector<Point2>& pts) : points(pts) {}          // NOLINT(implicit)
  Obstacles(std::span<const Point2> pts, std::size_t skip_index,
            std::span<const Point2> extra_points = {})
      : points(pts), skip(skip_index), extra(extra_points) {}

  template <typename Fn>
  bool any_of(Fn&& fn) const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i != skip && fn(points[i])) return true;
    }
    for (const Point2& p : extra) {
      if (fn(p)) return true;
    }
    return false;
  }
};

/// Strict: tangent discs do not overlap.
bool discs_overlap(Point2 a, Point2 b, double radius);

/// Non-strict: a disc touching an edge is still inside.
bool in_workspace(Point2 p, double radius, const Workspace& ws);

/// One collision check. Always increments `ctr`, whatever the outcome.
bool is_placement_valid(const Obstacles& others, Point2 candidate, double radius,
                        const Workspace& ws, CollisionCounter& ctr);

/// Optional sampling window; the inset workspace is intersected with it.
struct SamplingWindow {
  Point2 center;
  double half_extent = 0.0;
};

/// Rejection-samples a free disc center uniformly over the radius-inset
/// workspace. Each try costs exactly one collision check.
std::optional<Point2> sample_free_position(const Obstacles& others, double radius,
                                           const Workspace& ws, Rng& rng, int max_tries,
                                           CollisionCounter& ctr,
                                           std::optional<SamplingWindow> window = std::nullopt);

}  // namespace rearrange
