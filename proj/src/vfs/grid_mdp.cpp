#include "vfstl/vfs/grid_mdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

namespace vfstl::vfs {

GridMdp::GridMdp(int width, int height, double slip)
    : width_(width), height_(height), slip_(slip) {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (slip < 0.0 || slip > 1.0) throw std::invalid_argument("slip must lie in [0, 1]");
  goal_.assign(static_cast<std::size_t>(state_count()), false);
  blocked_.assign(static_cast<std::size_t>(state_count()), false);
}

void GridMdp::set_goal(int x, int y) {
  goal_[static_cast<std::size_t>(index(x, y))] = true;
  blocked_[static_cast<std::size_t>(index(x, y))] = false;
}

void GridMdp::set_blocked(int x, int y) {
  blocked_[static_cast<std::size_t>(index(x, y))] = true;
  goal_[static_cast<std::size_t>(index(x, y))] = false;
}

int GridMdp::move(int s, GridAction a) const {
  int x = s % width_;
  int y = s / width_;
  switch (a) {
    case GridAction::Up: ++y; break;
    case GridAction::Down: --y; break;
    case GridAction::Left: --x; break;
    case GridAction::Right: ++x; break;
    case GridAction::Stay: break;
  }
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return s;
  const int t = index(x, y);
  return is_blocked(t) ? s : t;
}

std::vector<std::pair<int, double>> GridMdp::transitions(int s, GridAction a) const {
  if (is_goal(s) || is_blocked(s)) return {{s, 1.0}};
  std::vector<std::pair<int, double>> out;
  auto add = [&](int t, double p) {
    if (p == 0.0) return;
    for (auto& [st, pr] : out) {
      if (st == t) {
        pr += p;
        return;
      }
    }
    out.emplace_back(t, p);
  };
  add(move(s, a), 1.0 - slip_);
  for (int b = 0; b < kGridActionCount; ++b) {
    if (b != static_cast<int>(a)) add(move(s, static_cast<GridAction>(b)), slip_ / 4.0);
  }
  return out;
}

GridMdp random_grid_mdp(int width, int height, double slip, std::uint64_t seed) {
  GridMdp mdp(width, height, slip);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution wall(0.15);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (wall(rng)) mdp.set_blocked(x, y);
    }
  }
  std::uniform_int_distribution<int> n_goals(1, 3);
  std::uniform_int_distribution<int> px(0, width - 1);
  std::uniform_int_distribution<int> py(0, height - 1);
  for (int g = n_goals(rng); g > 0; --g) mdp.set_goal(px(rng), py(rng));
  return mdp;
}

namespace {

double q_value(const GridMdp& mdp, const std::vector<double>& v, int s, GridAction a) {
  double q = 0.0;
  for (auto [t, p] : mdp.transitions(s, a)) q += p * (mdp.is_goal(t) ? 1.0 : v[static_cast<std::size_t>(t)]);
  return q;
}

}  // namespace

ValueTable value_iteration(const GridMdp& mdp, double tolerance) {
  const int n = mdp.state_count();
  ValueTable table;
  table.values.assign(static_cast<std::size_t>(n), 0.0);
  for (int s = 0; s < n; ++s) {
    if (mdp.is_goal(s)) table.values[static_cast<std::size_t>(s)] = 1.0;
  }
  std::vector<double> next = table.values;
  constexpr int kMaxIterations = 10'000'000;
  for (table.iterations = 1; table.iterations <= kMaxIterations; ++table.iterations) {
    double change = 0.0;
    for (int s = 0; s < n; ++s) {
      if (mdp.is_goal(s) || mdp.is_blocked(s)) continue;
      double best = 0.0;
      for (int a = 0; a < kGridActionCount; ++a) best = std::max(best, q_value(mdp, table.values, s, static_cast<GridAction>(a)));
      change = std::max(change, std::abs(best - table.values[static_cast<std::size_t>(s)]));
      next[static_cast<std::size_t>(s)] = best;
    }
    std::swap(table.values, next);
    if (change < tolerance) break;
  }
  return table;
}

std::vector<GridAction> greedy_policy(const GridMdp& mdp, const std::vector<double>& values, double tie_tolerance) {
  const int n = mdp.state_count();
  std::vector<GridAction> policy(static_cast<std::size_t>(n), GridAction::Stay);
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (mdp.is_goal(s) || mdp.is_blocked(s)) continue;
    std::array<double, kGridActionCount> q{};
    double best = -1.0;
    for (int a = 0; a < kGridActionCount; ++a) {
      q[static_cast<std::size_t>(a)] = q_value(mdp, values, s, static_cast<GridAction>(a));
      best = std::max(best, q[static_cast<std::size_t>(a)]);
    }
    for (int a = 0; a < kGridActionCount; ++a) {
      if (q[static_cast<std::size_t>(a)] >= best - tie_tolerance) candidates[static_cast<std::size_t>(s)].push_back(a);
    }
    policy[static_cast<std::size_t>(s)] = static_cast<GridAction>(candidates[static_cast<std::size_t>(s)].front());
  }

  // Layered assignment outward from the goals: a state takes the near-optimal
  // action that moves the most probability into already-assigned states.
  // Slip mass alone would also "progress", but through chains with tiny
  // escape probabilities.
  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  for (int s = 0; s < n; ++s) assigned[static_cast<std::size_t>(s)] = mdp.is_goal(s);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> layer = assigned;
    for (int s = 0; s < n; ++s) {
      if (assigned[static_cast<std::size_t>(s)] || mdp.is_blocked(s)) continue;
      double best_mass = 0.0;
      for (int a : candidates[static_cast<std::size_t>(s)]) {
        double mass = 0.0;
        for (auto [t, p] : mdp.transitions(s, static_cast<GridAction>(a))) {
          if (t != s && assigned[static_cast<std::size_t>(t)]) mass += p;
        }
        if (mass > best_mass) {
          best_mass = mass;
          policy[static_cast<std::size_t>(s)] = static_cast<GridAction>(a);
        }
      }
      if (best_mass > 0.0) {
        layer[static_cast<std::size_t>(s)] = true;
        changed = true;
      }
    }
    assigned = std::move(layer);
  }
  return policy;
}

std::vector<double> reach_probability(const GridMdp& mdp, const std::vector<GridAction>& policy) {
  const int n = mdp.state_count();
  if (policy.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("policy size does not match the MDP");

  // States with a positive-probability path to a goal under the policy.
  std::vector<std::vector<int>> predecessors(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    for (auto [t, p] : mdp.transitions(s, policy[static_cast<std::size_t>(s)])) {
      if (p > 0.0 && t != s) predecessors[static_cast<std::size_t>(t)].push_back(s);
    }
  }
  std::vector<bool> can_reach(static_cast<std::size_t>(n), false);
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    if (mdp.is_goal(s)) {
      can_reach[static_cast<std::size_t>(s)] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int s : predecessors[static_cast<std::size_t>(t)]) {
      if (!can_reach[static_cast<std::size_t>(s)]) {
        can_reach[static_cast<std::size_t>(s)] = true;
        queue.push_back(s);
      }
    }
  }

  std::vector<int> transient;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (can_reach[static_cast<std::size_t>(s)] && !mdp.is_goal(s)) {
      slot[static_cast<std::size_t>(s)] = static_cast<int>(transient.size());
      transient.push_back(s);
    }
  }

  // (I - P_TT) p_T = P_TG 1 over the transient states.
  const auto m = static_cast<Eigen::Index>(transient.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int s = transient[static_cast<std::size_t>(i)];
    for (auto [t, p] : mdp.transitions(s, policy[static_cast<std::size_t>(s)])) {
      if (mdp.is_goal(t)) {
        b(i) += p;
      } else if (slot[static_cast<std::size_t>(t)] >= 0) {
        a(i, slot[static_cast<std::size_t>(t)]) -= p;
      }
    }
  }
  Eigen::VectorXd x = m > 0 ? Eigen::VectorXd(a.partialPivLu().solve(b)) : Eigen::VectorXd();

  std::vector<double> prob(static_cast<std::size_t>(n), 0.0);
  for (int s = 0; s < n; ++s) {
    if (mdp.is_goal(s)) prob[static_cast<std::size_t>(s)] = 1.0;
  }
  for (Eigen::Index i = 0; i < m; ++i) prob[static_cast<std::size_t>(transient[static_cast<std::size_t>(i)])] = x(i);
  return prob;
}

}  // namespace vfstl::vfs
