#include "rearrange/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rearrange {

double squared_distance(Point2 a, Point2 b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point2 a, Point2 b) noexcept { return std::sqrt(squared_distance(a, b)); }

void Workspace::validate(double radius) const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("object radius must be positive and finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw std::invalid_argument("workspace bounds must satisfy min < max");
  }
  if (!(width() > 2.0 * radius) || !(height() > 2.0 * radius)) {
    throw std::invalid_argument("workspace must be wider and taller than one object diameter");
  }
}

bool discs_overlap(Point2 a, Point2 b, double radius) {
  const double diameter = 2.0 * radius;
  return squared_distance(a, b) < diameter * diameter;
}

bool in_workspace(Point2 p, double radius, const Workspace& ws) {
  return p.x - radius >= ws.x_min && p.x + radius <= ws.x_max &&
         p.y - radius >= ws.y_min && p.y + radius <= ws.y_max;
}

bool is_placement_valid(const Obstacles& others, Point2 candidate, double radius,
                        const Workspace& ws, CollisionCounter& ctr) {
  ctr.increment();
  if (!in_workspace(candidate, radius, ws)) return false;
  return !others.any_of([&](Point2 o) { return discs_overlap(o, candidate, radius); });
}

std::optional<Point2> sample_free_position(const Obstacles& others, double radius,
                                           const Workspace& ws, Rng& rng, int max_tries,
                                           CollisionCounter& ctr,
                                           std::optional<SamplingWindow> window) {
  if (max_tries < 1) throw ContractViolation("sample_free_position: max_tries must be >= 1");

  double lo_x = ws.x_min + radius;
  double hi_x = ws.x_max - radius;
  double lo_y = ws.y_min + radius;
  double hi_y = ws.y_max - radius;
  if (window) {
    lo_x = std::max(lo_x, window->center.x - window->half_extent);
    hi_x = std::min(hi_x, window->center.x + window->half_extent);
    lo_y = std::max(lo_y, window->center.y - window->half_extent);
    hi_y = std::min(hi_y, window->center.y + window->half_extent);
    if (lo_x > hi_x || lo_y > hi_y) return std::nullopt;
  }

  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const Point2 candidate{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
    if (is_placement_valid(others, candidate, radius, ws, ctr)) return candidate;
  }
  return std::nullopt;
}

}  // namespace rearrange
