#pragma once

#include <cstdint>
#include <vector>

#include "vfstl/planner/mcts.hpp"
#include "vfstl/world/world.hpp"

namespace vfstl::planner {

struct Replan {
  int step = 0;  // macro-step at which the plan was computed
  PlanResult plan;
};

struct MpcResult {
  world::WorldConfig world;  // layout used for the run
  /// Every environment state, horizon * tau + 1 entries.
  std::vector<world::RobotState> states;
  /// Skill that produced each state; -1 for the initial state.
  std::vector<int> active_skill;
  std::vector<int> executed_skills;
  /// Embeddings of the executed states at macro-step boundaries.
  std::vector<VfsPoint> realized_z;
  std::vector<Replan> replans;
  stl::Signal ground_truth;
  double ground_truth_robustness = 0.0;
  double vfs_robustness = 0.0;
};

/// Receding-horizon execution from a given start: every replan_interval
/// macro-steps, plan over the executed history plus a predicted suffix of
/// the full horizon, then run the next replan_interval planned skills in
/// the simulator.
MpcResult mpc_run(const world::ResetResult& start, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                  const PlannerConfig& cfg);

/// Resets the world with `seed`, then runs the loop above.
MpcResult mpc_run(const world::WorldConfig& world, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                  const PlannerConfig& cfg, std::uint64_t seed);

}  // namespace vfstl::planner
