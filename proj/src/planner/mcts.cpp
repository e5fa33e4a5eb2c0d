#include "vfstl/planner/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vfstl/stl/monitor.hpp"

namespace vfstl::planner {

void PlannerConfig::validate() const {
  if (horizon < 0) throw std::invalid_argument("plan horizon must be non-negative");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (replan_interval < 1) throw std::invalid_argument("replan_interval must be >= 1");
  if (!(ucb_c >= 0.0)) throw std::invalid_argument("ucb_c must be non-negative");
}

std::vector<std::string> default_channel_names(int k) {
  static const char* kLetters[] = {"R", "J", "Y", "W"};
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(i < 4 ? kLetters[i] : "z" + std::to_string(i));
  return names;
}

stl::Signal z_signal(std::span<const VfsPoint> traj) {
  if (traj.empty()) throw std::invalid_argument("empty VFS trajectory");
  const std::size_t k = traj.front().size();
  auto names = default_channel_names(static_cast<int>(k));
  stl::Signal s;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> samples;
    samples.reserve(traj.size());
    for (const auto& p : traj) samples.push_back(p[i]);
    s.set_channel(names[i], std::move(samples));
  }
  return s;
}

std::vector<VfsPoint> SearchTree::path_points(std::size_t i) const {
  std::vector<VfsPoint> tail;
  for (std::size_t n = i; nodes[n].parent; n = *nodes[n].parent) tail.push_back(nodes[n].z);
  std::vector<VfsPoint> out = history;
  out.insert(out.end(), tail.rbegin(), tail.rend());
  return out;
}

double ucb_score(double score, std::uint64_t visits, std::uint64_t parent_visits, double c, UcbVariant variant) {
  if (visits == 0) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(visits);
  const double np = static_cast<double>(parent_visits);
  const double exploit = score / n;
  if (variant == UcbVariant::Uct) return exploit + c * std::sqrt(std::log(np) / n);
  return exploit + c * std::sqrt(np) / n;
}

double ucb(const SearchTree& tree, std::size_t node, double c, UcbVariant variant) {
  const TreeNode& v = tree.nodes.at(node);
  if (!v.parent) throw std::invalid_argument("ucb is undefined for the root");
  return ucb_score(v.score, v.visits, tree.nodes[*v.parent].visits, c, variant);
}

namespace {

void check_inputs(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                  int horizon) {
  if (history.empty()) throw std::invalid_argument("planning needs at least the current VFS point");
  if (static_cast<int>(history.size()) - 1 > horizon) {
    throw std::invalid_argument("history is longer than the plan horizon");
  }
  const int h = stl::horizon(phi);
  if (horizon < h) {
    throw std::invalid_argument("plan horizon " + std::to_string(horizon) + " is shorter than the formula horizon " +
                                std::to_string(h));
  }
  auto names = default_channel_names(dynamics.skill_count());
  for (const auto& ch : stl::channels(phi)) {
    if (std::find(names.begin(), names.end(), ch) == names.end()) throw stl::UnknownChannelError(ch);
  }
}

}  // namespace

Rollout rollout(std::span<const VfsPoint> prefix, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                const PlannerConfig& cfg, std::mt19937_64& rng) {
  if (prefix.empty() || static_cast<int>(prefix.size()) - 1 > cfg.horizon) {
    throw std::invalid_argument("rollout prefix must be non-empty and within the horizon");
  }
  Rollout r;
  r.trajectory.assign(prefix.begin(), prefix.end());
  std::uniform_int_distribution<int> pick(0, dynamics.skill_count() - 1);
  while (static_cast<int>(r.trajectory.size()) < cfg.horizon + 1) {
    const int o = pick(rng);
    r.skills.push_back(o);
    r.trajectory.push_back(dynamics.predict(r.trajectory.back(), o));
  }
  r.reward = stl::robustness(z_signal(r.trajectory), phi, 0);
  return r;
}

SearchTree build_tree(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                      const PlannerConfig& cfg) {
  cfg.validate();
  check_inputs(history, dynamics, phi, cfg.horizon);
  const int k = dynamics.skill_count();

  SearchTree tree;
  tree.history.assign(history.begin(), history.end());
  tree.horizon = cfg.horizon;
  TreeNode root;
  root.z = history.back();
  root.depth = static_cast<int>(history.size()) - 1;
  root.children.resize(static_cast<std::size_t>(k));
  tree.nodes.push_back(std::move(root));

  std::mt19937_64 rng(cfg.seed);
  for (int it = 0; it < cfg.iterations; ++it) {
    // Selection and expansion.
    std::size_t v = 0;
    bool expanded = false;
    while (!tree.is_terminal(v)) {
      auto& children = tree.nodes[v].children;
      auto slot = std::find_if(children.begin(), children.end(), [](const auto& c) { return !c.has_value(); });
      if (slot != children.end()) {
        const int skill = static_cast<int>(slot - children.begin());
        TreeNode child;
        child.z = dynamics.predict(tree.nodes[v].z, skill);
        child.depth = tree.nodes[v].depth + 1;
        child.incoming_skill = skill;
        child.parent = v;
        child.children.resize(static_cast<std::size_t>(k));
        const std::size_t idx = tree.nodes.size();
        tree.nodes.push_back(std::move(child));
        tree.nodes[v].children[static_cast<std::size_t>(skill)] = idx;
        v = idx;
        expanded = true;
        break;
      }
      std::size_t best = 0;
      double best_u = -std::numeric_limits<double>::infinity();
      for (const auto& c : tree.nodes[v].children) {
        const double u = ucb(tree, *c, cfg.ucb_c, cfg.ucb_variant);
        if (u > best_u) {
          best_u = u;
          best = *c;
        }
      }
      v = best;
    }

    Rollout r = rollout(tree.path_points(v), dynamics, phi, cfg, rng);
    if (r.reward > tree.best_reward) {
      tree.best_reward = r.reward;
      tree.best_skills.clear();
      for (std::size_t n = v; tree.nodes[n].parent; n = *tree.nodes[n].parent) {
        tree.best_skills.push_back(*tree.nodes[n].incoming_skill);
      }
      std::reverse(tree.best_skills.begin(), tree.best_skills.end());
      tree.best_skills.insert(tree.best_skills.end(), r.skills.begin(), r.skills.end());
    }
    if (expanded) tree.nodes[v].playout = std::move(r.skills);

    for (std::optional<std::size_t> n = v; n; n = tree.nodes[*n].parent) {
      tree.nodes[*n].visits += 1;
      tree.nodes[*n].score += r.reward;
    }
  }
  return tree;
}

SearchTree build_tree(const VfsPoint& z0, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                      const PlannerConfig& cfg) {
  return build_tree(std::span<const VfsPoint>(&z0, 1), dynamics, phi, cfg);
}

namespace {

std::optional<std::size_t> best_scored_child(const SearchTree& tree, std::size_t v) {
  std::optional<std::size_t> best;
  for (const auto& c : tree.nodes[v].children) {
    if (!c) continue;
    if (!best || tree.nodes[*c].score > tree.nodes[*best].score) best = c;
  }
  return best;
}

}  // namespace

std::vector<int> optimal_policy(const SearchTree& tree) {
  if (tree.nodes.empty() || !best_scored_child(tree, 0)) {
    throw std::invalid_argument("optimal_policy: the root has no children");
  }
  std::vector<int> skills;
  std::size_t v = 0;
  while (auto next = best_scored_child(tree, v)) {
    v = *next;
    skills.push_back(*tree.nodes[v].incoming_skill);
  }
  return skills;
}

PlanResult evaluate_plan(std::span<const VfsPoint> history, std::vector<int> skills,
                         const vfs::VfsDynamics& dynamics, const stl::Formula& phi) {
  if (history.empty()) throw std::invalid_argument("evaluate_plan needs a non-empty history");
  PlanResult out;
  out.predicted_z_trajectory.assign(history.begin(), history.end());
  for (int o : skills) out.predicted_z_trajectory.push_back(dynamics.predict(out.predicted_z_trajectory.back(), o));
  out.skills = std::move(skills);
  out.predicted_robustness = stl::robustness(z_signal(out.predicted_z_trajectory), phi, 0);
  return out;
}

PlanResult plan(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                const PlannerConfig& cfg) {
  cfg.validate();
  if (cfg.search == SearchMode::Exhaustive) return exhaustive_best(history, dynamics, phi, cfg.horizon);
  check_inputs(history, dynamics, phi, cfg.horizon);
  if (static_cast<int>(history.size()) - 1 == cfg.horizon) return evaluate_plan(history, {}, dynamics, phi);

  SearchTree tree = build_tree(history, dynamics, phi, cfg);
  std::vector<int> skills = optimal_policy(tree);
  std::size_t v = 0;
  for (int o : skills) v = *tree.nodes[v].children[static_cast<std::size_t>(o)];
  const auto& tail = tree.nodes[v].playout;
  skills.insert(skills.end(), tail.begin(), tail.end());
  PlanResult from_policy = evaluate_plan(history, std::move(skills), dynamics, phi);
  if (cfg.keep_best_rollout && tree.best_reward > from_policy.predicted_robustness) {
    return evaluate_plan(history, tree.best_skills, dynamics, phi);
  }
  return from_policy;
}

}  // namespace vfstl::planner
