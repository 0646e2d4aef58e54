#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rearrange/arrangement.hpp"
#include "rearrange/geometry.hpp"
#include "rearrange/plan_result.hpp"
#include "rearrange/random.hpp"

namespace rearrange {

/// Knobs of the action parametrization (GET_MOTION).
struct MotionOptions {
  int find_position_tries = kDefaultFindPositionTries;
  /// Also keep relocated obstructors off every other object's target.
  bool avoid_other_targets = false;
  /// Sample relocations inside a square of this half-extent around the
  /// obstructor's current position.
  std::optional<double> neighborhood_half_extent;
};

enum class TieBreak { kLowestIndex, kRandom };

struct SearchConfig {
  double exploration_c = 1.0;
  std::uint64_t max_iterations = 100000;
  /// Backpropagate reward / N instead of the raw object count.
  bool normalize_reward = false;
  std::uint64_t seed = 0;
  /// Rule for equal UCB scores during selection. kRandom draws from a stream
  /// separate from expansion, so runs stay reproducible per seed.
  TieBreak tie_break = TieBreak::kRandom;
  MotionOptions motion;
};

/// Upper confidence bound of one action:
/// Q + c * sqrt(2 ln(parent_visits) / child_visits).
double ucb_score(double q, std::uint64_t parent_visits, std::uint64_t child_visits, double c);

/// Index of the object i != k closest to `target_pos` among those whose disc
/// overlaps a disc at `target_pos`; ties go to the lowest index. Empty when
/// nothing overlaps (the move was blocked by the workspace bounds).
std::optional<std::size_t> find_closest_obstructor(std::span<const Point2> current, std::size_t k,
                                                   Point2 target_pos, double radius);

/// Pick-and-place motion for action k: move k straight to its target when
/// that placement is valid, else move the closest obstructor to a sampled free
/// position off T_k, else a no-op on k.
Motion get_motion(std::span<const Point2> current, const Instance& inst, std::size_t k,
                  const MotionOptions& opts, Rng& rng, CollisionCounter& ctr);

/// Search tree with flat node storage. Node 0 is the root.
///
/// The root starts with one visit so that ln n(s) >= 0 at the first
/// selection. After I iterations the root therefore has I + 1 visits and
/// every other node has 1 + (sum of its children's visits).
class SearchTree {
public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kNoNode = UINT32_MAX;

  struct Node {
    NodeId parent = kNoNode;
    std::uint32_t action = 0;  // action taken from the parent
    std::uint32_t unexpanded = 0;
    std::uint32_t reward = 0;  // object count within epsilon of target
    std::uint64_t visits = 0;
    double cumulative_reward = 0.0;
    Motion motion;  // cached edge motion from the parent
  };

  struct Selection {
    /// (node, action) pairs descended from the root; empty when the root is expandable.
    std::vector<std::pair<NodeId, std::uint32_t>> path;
    NodeId node = 0;
  };

  SearchTree(const Instance& inst, const SearchConfig& config);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t objects() const noexcept { return n_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::span<const Point2> state(NodeId id) const;
  /// kNoNode when the action has not been expanded yet.
  NodeId child(NodeId id, std::size_t action) const;

  /// Mean backed-up reward of a visited node.
  double q_value(NodeId id) const;

  /// Descends by maximal UCB until a node with an unexpanded action.
  Selection select(double c, Rng* tie_rng = nullptr) const;

  /// Adds one child of `id` for a uniformly random unexpanded action,
  /// computing and caching its motion. Throws ContractViolation if `id` is
  /// fully expanded.
  NodeId expand(NodeId id, Rng& rng, CollisionCounter& ctr);

  /// Reward value fed to backpropagation for a node, per the normalization mode.
  double leaf_value(NodeId id) const;

  /// Node ids from `leaf` up to and including the root.
  std::vector<NodeId> path_to_root(NodeId leaf) const;

  /// visits += 1 and cumulative_reward += value on every node of `leaf_to_root`.
  void backpropagate(std::span<const NodeId> leaf_to_root, double value);

  /// Cached motions along root -> leaf with no-ops removed.
  Plan extract_plan(NodeId leaf) const;

private:
  const Instance* inst_;
  SearchConfig config_;
  std::size_t n_;
  std::vector<Node> nodes_;
  std::vector<Point2> states_;     // n_ points per node
  std::vector<NodeId> children_;   // n_ slots per node
};

/// Runs select -> expand -> evaluate -> backpropagate until the first
/// expanded node solves the instance or max_iterations is reached.
PlanResult mcts_plan(const Instance& inst, const SearchConfig& config);

}  // namespace rearrange
