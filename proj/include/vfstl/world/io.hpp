#pragma once

#include <json.hpp>
#include <ostream>
#include <vector>

#include "vfstl/world/world.hpp"

namespace vfstl::world {

/// {arena_half_extent, robot_speed, tau, seed, zones:[{color, cx, cy, r}]}
/// plus the optional keys turn_limit, randomize_zones, zone_radius.
/// Missing keys keep their defaults.
nlohmann::json to_json(const WorldConfig& cfg);
WorldConfig world_config_from_json(const nlohmann::json& j);

/// CSV with columns step, x, y, heading, active_skill. active_skill[i] is
/// the skill that produced state i; the first entry is -1.
void write_trajectory_csv(std::ostream& out, const std::vector<RobotState>& traj,
                          const std::vector<int>& active_skill);

}  // namespace vfstl::world
