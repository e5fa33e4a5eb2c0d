#include "vfstl/world/io.hpp"

#include <charconv>

namespace vfstl::world {

nlohmann::json to_json(const WorldConfig& cfg) {
  nlohmann::json zones = nlohmann::json::array();
  for (const auto& z : cfg.zones) {
    zones.push_back({{"color", std::string(1, color_letter(z.color))},
                     {"cx", z.center.x},
                     {"cy", z.center.y},
                     {"r", z.radius}});
  }
  return {{"arena_half_extent", cfg.arena_half_extent},
          {"robot_speed", cfg.robot_speed},
          {"tau", cfg.tau},
          {"seed", cfg.rng_seed},
          {"turn_limit", cfg.turn_limit},
          {"randomize_zones", cfg.randomize_zones},
          {"zone_radius", cfg.zone_radius},
          {"zones", zones}};
}

WorldConfig world_config_from_json(const nlohmann::json& j) {
  WorldConfig cfg;
  cfg.arena_half_extent = j.value("arena_half_extent", cfg.arena_half_extent);
  cfg.robot_speed = j.value("robot_speed", cfg.robot_speed);
  cfg.tau = j.value("tau", cfg.tau);
  cfg.rng_seed = j.value("seed", cfg.rng_seed);
  cfg.turn_limit = j.value("turn_limit", cfg.turn_limit);
  cfg.randomize_zones = j.value("randomize_zones", cfg.randomize_zones);
  cfg.zone_radius = j.value("zone_radius", cfg.zone_radius);
  if (j.contains("zones")) {
    cfg.zones.clear();
    for (const auto& z : j.at("zones")) {
      cfg.zones.push_back({color_from_letter(z.at("color").get<std::string>()),
                           {z.at("cx").get<double>(), z.at("cy").get<double>()},
                           z.at("r").get<double>()});
    }
  }
  cfg.validate();
  return cfg;
}

void write_trajectory_csv(std::ostream& out, const std::vector<RobotState>& traj,
                          const std::vector<int>& active_skill) {
  out << "step,x,y,heading,active_skill\n";
  char buf[64];
  auto num = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
  };
  for (std::size_t i = 0; i < traj.size(); ++i) {
    int skill = i < active_skill.size() ? active_skill[i] : -1;
    out << i << ',' << num(traj[i].position.x) << ',' << num(traj[i].position.y) << ','
        << num(traj[i].heading) << ',' << skill << '\n';
  }
}

}  // namespace vfstl::world
