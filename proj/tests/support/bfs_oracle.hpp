#pragma once

// Breadth-first search over a discretized version of the rearrangement
// problem. Each object may only sit at a candidate position: any initial or
// target position, or a node of a regular grid over the radius-inset
// workspace. The optimum over this restricted move set is an upper bound on
// the true optimal motion count, and equals it whenever the grid offers a
// free buffer spot. Test-only; shares nothing with the planners except the
// disc predicates.

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rearrange/arrangement.hpp"

namespace rearrange::testing {

struct OracleGrid {
  int columns = 6;
  int rows = 4;
};

inline std::vector<Point2> oracle_candidates(const Instance& inst, OracleGrid grid) {
  std::vector<Point2> cands(inst.initial.begin(), inst.initial.end());
  cands.insert(cands.end(), inst.target.begin(), inst.target.end());
  const Workspace& ws = inst.workspace;
  const double x0 = ws.x_min + inst.radius;
  const double x1 = ws.x_max - inst.radius;
  const double y0 = ws.y_min + inst.radius;
  const double y1 = ws.y_max - inst.radius;
  for (int c = 0; c < grid.columns; ++c) {
    for (int r = 0; r < grid.rows; ++r) {
      cands.push_back({x0 + (x1 - x0) * (c + 0.5) / grid.columns,
                       y0 + (y1 - y0) * (r + 0.5) / grid.rows});
    }
  }
  return cands;
}

/// Minimal number of motions, or empty if unreachable within `max_depth`.
inline std::optional<int> bfs_optimal_motions(const Instance& inst, OracleGrid grid = {},
                                              int max_depth = 8) {
  const std::size_t n = inst.size();
  const std::vector<Point2> cands = oracle_candidates(inst, grid);
  const std::uint64_t m = cands.size();

  auto encode = [&](const std::vector<std::uint32_t>& s) {
    std::uint64_t code = 0;
    for (auto idx : s) code = code * m + idx;
    return code;
  };
  auto solved = [&](const std::vector<std::uint32_t>& s) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = cands[s[i]].x - inst.target[i].x;
      const double dy = cands[s[i]].y - inst.target[i].y;
      if (dx * dx + dy * dy > inst.epsilon * inst.epsilon) return false;
    }
    return true;
  };
  auto free_at = [&](const std::vector<std::uint32_t>& s, std::size_t mover, Point2 p) {
    if (!in_workspace(p, inst.radius, inst.workspace)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != mover && discs_overlap(cands[s[i]], p, inst.radius)) return false;
    }
    return true;
  };

  std::vector<std::uint32_t> start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = static_cast<std::uint32_t>(i);
  if (solved(start)) return 0;

  std::unordered_map<std::uint64_t, int> depth{{encode(start), 0}};
  std::deque<std::vector<std::uint32_t>> queue{start};
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    const int d = depth.at(encode(s));
    if (d >= max_depth) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t from = s[i];
      for (std::uint32_t c = 0; c < m; ++c) {
        if (c == from || !free_at(s, i, cands[c])) continue;
        s[i] = c;
        const auto code = encode(s);
        if (!depth.contains(code)) {
          if (solved(s)) return d + 1;
          depth.emplace(code, d + 1);
          queue.push_back(s);
        }
        s[i] = from;
      }
    }
  }
  return std::nullopt;
}

}  // namespace rearrange::testing
