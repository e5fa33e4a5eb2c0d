#include "vfstl/planner/mpc.hpp"

#include <algorithm>
#include <stdexcept>

#include "vfstl/common/seed.hpp"
#include "vfstl/stl/monitor.hpp"
#include "vfstl/vfs/embedding.hpp"

namespace vfstl::planner {

MpcResult mpc_run(const world::ResetResult& start, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                  const PlannerConfig& cfg) {
  cfg.validate();
  if (start.world.tau < 1) throw std::invalid_argument("closed-loop execution needs tau >= 1");
  MpcResult out;
  out.world = start.world;
  out.states.push_back(start.state);
  out.active_skill.push_back(-1);
  out.realized_z.push_back(vfs::embed_state(start.state, start.world));

  const int horizon = cfg.horizon;
  int t = 0;
  while (t < horizon) {
    PlannerConfig step_cfg = cfg;
    step_cfg.seed = derive_seed(cfg.seed, streams::kPlanner, static_cast<std::uint64_t>(t));
    PlanResult p = plan(out.realized_z, dynamics, phi, step_cfg);
    const int n = std::min(cfg.replan_interval, horizon - t);
    for (int i = 0; i < n; ++i) {
      const int skill = p.skills.at(static_cast<std::size_t>(i));
      auto micro = world::execute_skill(out.states.back(), world::skill_for(skill), start.world);
      out.states.insert(out.states.end(), micro.begin() + 1, micro.end());
      out.active_skill.insert(out.active_skill.end(), micro.size() - 1, skill);
      out.executed_skills.push_back(skill);
      out.realized_z.push_back(vfs::embed_state(out.states.back(), start.world));
    }
    out.replans.push_back({t, std::move(p)});
    t += n;
  }

  out.ground_truth = world::ground_truth_signal(out.states, start.world, std::max(1, start.world.tau));
  out.ground_truth_robustness = stl::robustness(out.ground_truth, world::ground_truth_formula(phi), 0);
  out.vfs_robustness = stl::robustness(z_signal(out.realized_z), phi, 0);
  return out;
}

MpcResult mpc_run(const world::WorldConfig& world, const vfs::VfsDynamics& dynamics, const stl::Formula& phi,
                  const PlannerConfig& cfg, std::uint64_t seed) {
  return mpc_run(world::reset_world(world, seed), dynamics, phi, cfg);
}

}  // namespace vfstl::planner
