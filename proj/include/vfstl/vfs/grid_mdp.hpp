#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace vfstl::vfs {

enum class GridAction { Up = 0, Down = 1, Left = 2, Right = 3, Stay = 4 };
inline constexpr int kGridActionCount = 5;

/// Tabular grid world with absorbing goal cells and a once-only reward of 1
/// on entering a goal (gamma = 1). With probability `slip` the agent takes
/// one of the four other actions uniformly instead. Moves into walls or off
/// the grid leave the agent in place; blocked cells are never entered.
class GridMdp {
 public:
  GridMdp(int width, int height, double slip);

  int width() const { return width_; }
  int height() const { return height_; }
  double slip() const { return slip_; }
  int state_count() const { return width_ * height_; }
  int index(int x, int y) const { return y * width_ + x; }

  void set_goal(int x, int y);
  void set_blocked(int x, int y);
  bool is_goal(int s) const { return goal_[static_cast<std::size_t>(s)]; }
  bool is_blocked(int s) const { return blocked_[static_cast<std::size_t>(s)]; }

  /// Successor distribution (state, probability); duplicates merged.
  std::vector<std::pair<int, double>> transitions(int s, GridAction a) const;

 private:
  int move(int s, GridAction a) const;

  int width_;
  int height_;
  double slip_;
  std::vector<bool> goal_;
  std::vector<bool> blocked_;
};

/// Random instance: ~15% blocked cells, 1 to 3 goals.
GridMdp random_grid_mdp(int width, int height, double slip, std::uint64_t seed);

struct ValueTable {
  std::vector<double> values;
  int iterations = 0;
};

/// Optimal values by max-over-actions backups, V(goal) = 1, iterated until
/// the sup-norm change drops below `tolerance`.
ValueTable value_iteration(const GridMdp& mdp, double tolerance);

/// Greedy policy with respect to `values`. Among actions within `tie_tolerance`
/// of the best, each state picks the one that moves the most probability
/// into states already known to lead to a goal, so the policy never idles on
/// a value plateau.
std::vector<GridAction> greedy_policy(const GridMdp& mdp, const std::vector<double>& values,
                                      double tie_tolerance = 1e-9);

/// Exact goal-absorption probabilities of the Markov chain induced by
/// `policy`, by a direct linear solve over states that can reach a goal.
std::vector<double> reach_probability(const GridMdp& mdp, const std::vector<GridAction>& policy);

}  // namespace vfstl::vfs
