#include "rearrange/mcts.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace rearrange {

double ucb_score(double q, std::uint64_t parent_visits, std::uint64_t child_visits, double c) {
  if (parent_visits < 1 || child_visits < 1) {
    throw ContractViolation("ucb_score: visit counts must be >= 1");
  }
  if (c == 0.0) return q;
  return q + c * std::sqrt(2.0 * std::log(static_cast<double>(parent_visits)) /
                           static_cast<double>(child_visits));
}

std::optional<std::size_t> find_closest_obstructor(std::span<const Point2> current, std::size_t k,
                                                   Point2 target_pos, double radius) {
  std::optional<std::size_t> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (i == k || !discs_overlap(current[i], target_pos, radius)) continue;
    const double d2 = squared_distance(current[i], target_pos);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

Motion get_motion(std::span<const Point2> current, const Instance& inst, std::size_t k,
                  const MotionOptions& opts, Rng& rng, CollisionCounter& ctr) {
  if (k >= current.size()) throw ContractViolation("get_motion: object index out of range");
  const Point2 goal = inst.target[k];
  if (is_placement_valid(Obstacles(current, k), goal, inst.radius, inst.workspace, ctr)) {
    return Motion{k, current[k], goal};
  }

  const auto j = find_closest_obstructor(current, k, goal, inst.radius);
  if (!j) return Motion{k, current[k], current[k]};

  // Keep the obstructor off T_k, and optionally off every other target.
  std::vector<Point2> keep_clear{goal};
  if (opts.avoid_other_targets) {
    for (std::size_t i = 0; i < inst.target.size(); ++i) {
      if (i != k && i != *j) keep_clear.push_back(inst.target[i]);
    }
  }
  std::optional<SamplingWindow> window;
  if (opts.neighborhood_half_extent) {
    window = SamplingWindow{current[*j], *opts.neighborhood_half_extent};
  }
  const auto spot =
      sample_free_position(Obstacles(current, *j, keep_clear), inst.radius, inst.workspace, rng,
                           opts.find_position_tries, ctr, window);
  if (spot) return Motion{*j, current[*j], *spot};
  return Motion{k, current[k], current[k]};
}

SearchTree::SearchTree(const Instance& inst, const SearchConfig& config)
    : inst_(&inst), config_(config), n_(inst.size()) {
  Node root;
  root.unexpanded = static_cast<std::uint32_t>(n_);
  root.reward = static_cast<std::uint32_t>(reward(inst.initial, inst.target, inst.epsilon));
  root.visits = 1;
  nodes_.push_back(root);
  states_.assign(inst.initial.begin(), inst.initial.end());
  children_.assign(n_, kNoNode);
}

std::span<const Point2> SearchTree::state(NodeId id) const {
  return std::span<const Point2>(states_).subspan(static_cast<std::size_t>(id) * n_, n_);
}

SearchTree::NodeId SearchTree::child(NodeId id, std::size_t action) const {
  return children_.at(static_cast<std::size_t>(id) * n_ + action);
}

double SearchTree::q_value(NodeId id) const {
  const Node& nd = nodes_.at(id);
  return nd.visits == 0 ? 0.0 : nd.cumulative_reward / static_cast<double>(nd.visits);
}

SearchTree::Selection SearchTree::select(double c, Rng* tie_rng) const {
  Selection sel;
  NodeId current = 0;
  while (nodes_[current].unexpanded == 0 && n_ > 0) {
    const std::uint64_t parent_visits = nodes_[current].visits;
    const NodeId* slots = children_.data() + static_cast<std::size_t>(current) * n_;
    std::uint32_t best_action = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    std::uint64_t ties = 0;
    for (std::uint32_t a = 0; a < n_; ++a) {
      const Node& ch = nodes_[slots[a]];
      const double score = ucb_score(ch.cumulative_reward / static_cast<double>(ch.visits),
                                     parent_visits, ch.visits, c);
      if (score > best_score) {
        best_score = score;
        best_action = a;
        ties = 1;
      } else if (score == best_score && tie_rng != nullptr) {
        // Reservoir pick: each tied action ends up chosen with equal odds.
        if (tie_rng->below(++ties) == 0) best_action = a;
      }
    }
    sel.path.emplace_back(current, best_action);
    current = slots[best_action];
  }
  sel.node = current;
  return sel;
}

SearchTree::NodeId SearchTree::expand(NodeId id, Rng& rng, CollisionCounter& ctr) {
  if (nodes_.at(id).unexpanded == 0) {
    throw ContractViolation("expand: node has no unexpanded action");
  }
  if (nodes_.size() >= kNoNode) throw std::length_error("search tree node limit reached");

  // Uniform choice among the remaining actions, in index order.
  std::size_t pick = rng.below(nodes_[id].unexpanded);
  const std::size_t base = static_cast<std::size_t>(id) * n_;
  std::uint32_t action = 0;
  for (std::uint32_t a = 0; a < n_; ++a) {
    if (children_[base + a] != kNoNode) continue;
    if (pick == 0) {
      action = a;
      break;
    }
    --pick;
  }

  const NodeId child_id = static_cast<NodeId>(nodes_.size());
  const Motion motion = get_motion(state(id), *inst_, action, config_.motion, rng, ctr);

  const std::size_t parent_offset = base;
  states_.resize(states_.size() + n_);
  std::copy_n(states_.begin() + static_cast<std::ptrdiff_t>(parent_offset), n_,
              states_.begin() + static_cast<std::ptrdiff_t>(child_id) * static_cast<std::ptrdiff_t>(n_));
  Point2& moved = states_[static_cast<std::size_t>(child_id) * n_ + motion.object];
  if (!(moved == motion.pick)) throw ContractViolation("expand: cached motion is stale");
  moved = motion.place;
  children_.resize(children_.size() + n_, kNoNode);

  Node node;
  node.parent = id;
  node.action = action;
  node.unexpanded = static_cast<std::uint32_t>(n_);
  node.reward =
      static_cast<std::uint32_t>(reward(state(child_id), inst_->target, inst_->epsilon));
  node.motion = motion;
  nodes_.push_back(node);

  children_[base + action] = child_id;
  --nodes_[id].unexpanded;
  return child_id;
}

double SearchTree::leaf_value(NodeId id) const {
  const double raw = static_cast<double>(nodes_.at(id).reward);
  if (!config_.normalize_reward || n_ == 0) return raw;
  return raw / static_cast<double>(n_);
}

std::vector<SearchTree::NodeId> SearchTree::path_to_root(NodeId leaf) const {
  if (leaf >= nodes_.size()) throw ContractViolation("path_to_root: node not in tree");
  std::vector<NodeId> path;
  for (NodeId id = leaf; id != kNoNode; id = nodes_[id].parent) path.push_back(id);
  return path;
}

void SearchTree::backpropagate(std::span<const NodeId> leaf_to_root, double value) {
  for (NodeId id : leaf_to_root) {
    Node& nd = nodes_.at(id);
    nd.visits += 1;
    nd.cumulative_reward += value;
  }
}

Plan SearchTree::extract_plan(NodeId leaf) const {
  const auto path = path_to_root(leaf);
  Plan plan;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (*it == 0) continue;
    const Motion& m = nodes_[*it].motion;
    if (!m.is_noop()) plan.push_back(m);
  }
  return plan;
}

PlanResult mcts_plan(const Instance& inst, const SearchConfig& config) {
  if (config.exploration_c < 0.0) throw std::invalid_argument("exploration constant must be >= 0");
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  validate_instance(inst);

  const auto start = std::chrono::steady_clock::now();
  PlanResult result;
  if (is_solved(inst.initial, inst.target, inst.epsilon)) {
    result.solved = true;
    result.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
    return result;
  }

  SearchTree tree(inst, config);
  Rng rng(config.seed);
  Rng tie_rng = rng.split(1);
  Rng* ties = config.tie_break == TieBreak::kRandom ? &tie_rng : nullptr;
  CollisionCounter ctr;
  const std::size_t n = inst.size();

  for (std::uint64_t it = 1; it <= config.max_iterations; ++it) {
    const auto sel = tree.select(config.exploration_c, ties);
    const auto leaf = tree.expand(sel.node, rng, ctr);
    const auto path = tree.path_to_root(leaf);
    tree.backpropagate(path, tree.leaf_value(leaf));
    result.iterations = it;
    if (tree.node(leaf).reward == n) {
      result.solved = true;
      result.plan = tree.extract_plan(leaf);
      break;
    }
  }

  result.collision_checks = ctr.count();
  result.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

}  // namespace rearrange
