#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfstl/stl/formula.hpp"
#include "vfstl/stl/signal.hpp"
#include "vfstl/vfs/dynamics.hpp"

namespace vfstl::planner {

using vfs::VfsPoint;

enum class UcbVariant {
  Sqrt,  // Score/N + c * sqrt(N_parent) / N
  Uct,    // Score/N + c * sqrt(ln N_parent / N)
};

enum class SearchMode { Mcts, Exhaustive };

struct PlannerConfig {
  int horizon = 10;
  int iterations = 2000;
  double ucb_c = 0.5;
  UcbVariant ucb_variant = UcbVariant::Sqrt;
  std::uint64_t seed = 0;
  int replan_interval = 1;
  SearchMode search = SearchMode::Mcts;
  /// plan() also keeps the best complete rollout seen during the search and
  /// returns it when it beats the extracted tree policy.
  bool keep_best_rollout = true;

  void validate() const;
};

struct PlanResult {
  /// Skills still to execute after the history the plan started from.
  std::vector<int> skills;
  /// History followed by the model-predicted points; horizon + 1 entries.
  std::vector<VfsPoint> predicted_z_trajectory;
  double predicted_robustness = 0.0;
};

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Channel names for a k-dimensional VFS: R, J, Y, W for the first four
/// skills, then z4, z5, ...
std::vector<std::string> default_channel_names(int k);

/// One channel per skill; sample t holds traj[t].
stl::Signal z_signal(std::span<const VfsPoint> traj);

struct TreeNode {
  VfsPoint z;
  int depth = 0;
  std::optional<int> incoming_skill;
  std::optional<std::size_t> parent;
  /// Child node index per skill id, empty while unexpanded.
  std::vector<std::optional<std::size_t>> children;
  std::uint64_t visits = 0;
  /// Sum of rollout rewards backed up through this node.
  double score = 0.0;
  /// Random skills drawn by the rollout that ran when this node was expanded.
  std::vector<int> playout;
};

struct SearchTree {
  /// Executed points before the root; the root's point is history.back().
  std::vector<VfsPoint> history;
  int horizon = 0;
  std::vector<TreeNode> nodes;
  /// Highest rollout reward seen and its full skill sequence from the root.
  double best_reward = -std::numeric_limits<double>::infinity();
  std::vector<int> best_skills;

  const TreeNode& root() const { return nodes.front(); }
  bool is_terminal(std::size_t i) const { return nodes[i].depth >= horizon; }
  /// history plus the points along the tree path down to node i.
  std::vector<VfsPoint> path_points(std::size_t i) const;
};

double ucb_score(double score, std::uint64_t visits, std::uint64_t parent_visits, double c, UcbVariant variant);

/// Selection value of a non-root node; +infinity while unvisited.
double ucb(const SearchTree& tree, std::size_t node, double c, UcbVariant variant = UcbVariant::Sqrt);

struct Rollout {
  double reward = 0.0;
  std::vector<int> skills;
  std::vector<VfsPoint> trajectory;
};

/// Extends prefix with uniformly random skills until it has horizon + 1
/// points; the reward is the robustness of the whole trajectory at t = 0.
Rollout rollout(std::span<const VfsPoint> prefix, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                const PlannerConfig& cfg, std::mt19937_64& rng);

/// cfg.iterations rounds of select / expand / rollout / backpropagate.
/// The root sits at depth history.size() - 1; nodes at cfg.horizon are terminal.
SearchTree build_tree(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                      const PlannerConfig& cfg);
SearchTree build_tree(const VfsPoint& z0, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                      const PlannerConfig& cfg);

/// Descends from the root by maximal Score (ties to the lowest skill id)
/// until a node without children.
std::vector<int> optimal_policy(const SearchTree& tree);

/// Rolls `skills` forward from the end of `history` and scores the result.
PlanResult evaluate_plan(std::span<const VfsPoint> history, std::vector<int> skills,
                         const vfs::VfsDynamics& dynamics, const stl::Formula& phi);

/// Brute force over all k^(remaining) sequences; lexicographically first
/// among equals. Throws BudgetExceededError above 10^6 sequences.
PlanResult exhaustive_best(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics,
                           const stl::Formula& phi, int horizon);
PlanResult exhaustive_best(const VfsPoint& z0, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                           int horizon);

/// Full plan from `history`: tree search and policy extraction, with the
/// tail below the deepest tree node filled from that node's playout, or
/// exhaustive enumeration when cfg.search says so. With
/// cfg.keep_best_rollout the best rollout wins when it scores higher.
PlanResult plan(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                const PlannerConfig& cfg);

}  // namespace vfstl::planner
