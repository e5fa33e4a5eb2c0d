#include <cmath>
#include <limits>

#include "vfstl/planner/mcts.hpp"
#include "vfstl/stl/monitor.hpp"

namespace vfstl::planner {

namespace {

constexpr double kMaxSequences = 1e6;

struct Search {
  const vfs::VfsDynamics& dynamics;
  const stl::Formula& phi;
  std::size_t target_length;
  std::vector<VfsPoint> traj;
  std::vector<int> skills;
  std::vector<int> best_skills;
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;

  void run() {
    if (traj.size() == target_length) {
      const double r = stl::robustness(z_signal(traj), phi, 0);
      if (!found || r > best) {
        best = r;
        best_skills = skills;
        found = true;
      }
      return;
    }
    for (int o = 0; o < dynamics.skill_count(); ++o) {
      traj.push_back(dynamics.predict(traj.back(), o));
      skills.push_back(o);
      run();
      skills.pop_back();
      traj.pop_back();
    }
  }
};

}  // namespace

PlanResult exhaustive_best(std::span<const VfsPoint> history, const vfs::VfsDynamics& dynamics,
                           const stl::Formula& phi, int horizon) {
  if (history.empty()) throw std::invalid_argument("exhaustive_best needs the current VFS point");
  const int remaining = horizon - (static_cast<int>(history.size()) - 1);
  if (remaining < 0) throw std::invalid_argument("history is longer than the plan horizon");
  if (horizon < stl::horizon(phi)) throw std::invalid_argument("plan horizon is shorter than the formula horizon");
  const double count = std::pow(static_cast<double>(dynamics.skill_count()), remaining);
  if (count > kMaxSequences) {
    throw BudgetExceededError("exhaustive search over " + std::to_string(dynamics.skill_count()) + "^" +
                              std::to_string(remaining) + " sequences exceeds the 10^6 budget");
  }
  Search s{dynamics, phi, static_cast<std::size_t>(horizon) + 1, {history.begin(), history.end()}, {}, {}};
  s.run();
  return evaluate_plan(history, std::move(s.best_skills), dynamics, phi);
}

PlanResult exhaustive_best(const VfsPoint& z0, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                           int horizon) {
  return exhaustive_best(std::span<const VfsPoint>(&z0, 1), dynamics, phi, horizon);
}

}  // namespace vfstl::planner
