#include "vfstl/world/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace vfstl::world {

char color_letter(Color c) {
  switch (c) {
    case Color::R: return 'R';
    case Color::J: return 'J';
    case Color::Y: return 'Y';
    case Color::W: return 'W';
  }
  return '?';
}

Color color_from_letter(std::string_view s) {
  if (s == "R") return Color::R;
  if (s == "J") return Color::J;
  if (s == "Y") return Color::Y;
  if (s == "W") return Color::W;
  throw std::invalid_argument("unknown color '" + std::string(s) + "' (expected R, J, Y or W)");
}

std::vector<std::string> color_channel_names() {
  std::vector<std::string> names;
  for (Color c : kColors) names.emplace_back(1, color_letter(c));
  return names;
}

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<ZoneSpec> default_zones() {
  constexpr double d = 1.5;
  constexpr double r = 0.3;
  return {
      {Color::R, {-d, d}, r},  {Color::J, {0.0, d}, r},  {Color::Y, {d, d}, r},   {Color::W, {d, 0.0}, r},
      {Color::R, {d, -d}, r},  {Color::J, {0.0, -d}, r}, {Color::Y, {-d, -d}, r}, {Color::W, {-d, 0.0}, r},
  };
}

void WorldConfig::validate() const {
  if (!(arena_half_extent > 0.0)) throw std::invalid_argument("arena_half_extent must be positive");
  if (!(robot_speed > 0.0)) throw std::invalid_argument("robot_speed must be positive");
  if (tau < 0) throw std::invalid_argument("tau must be non-negative");
  if (!(turn_limit > 0.0)) throw std::invalid_argument("turn_limit must be positive");
  if (!(zone_radius > 0.0)) throw std::invalid_argument("zone_radius must be positive");
  if (zones.size() != 8) throw std::invalid_argument("world needs exactly 8 zones, got " + std::to_string(zones.size()));
  std::array<int, kColorCount> per_color{};
  for (const auto& z : zones) {
    if (!(z.radius > 0.0)) throw std::invalid_argument("zone radius must be positive");
    if (std::abs(z.center.x) + z.radius > arena_half_extent || std::abs(z.center.y) + z.radius > arena_half_extent) {
      throw std::invalid_argument("zone at (" + std::to_string(z.center.x) + ", " + std::to_string(z.center.y) +
                                  ") is not inside the arena");
    }
    ++per_color[static_cast<std::size_t>(color_index(z.color))];
  }
  for (int n : per_color) {
    if (n != 2) throw std::invalid_argument("each of the 4 colors needs exactly 2 zones");
  }
}

namespace {

constexpr int kMaxAttempts = 10000;

double wrap_angle(double a) {
  a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a - std::numbers::pi;
}

std::vector<ZoneSpec> sample_zones(const WorldConfig& cfg, std::mt19937_64& rng) {
  const double r = cfg.zone_radius;
  const double lim = cfg.arena_half_extent - r;
  if (lim < 0) throw RejectionSamplingError("zone radius larger than the arena");
  std::uniform_real_distribution<double> coord(-lim, lim);
  std::vector<ZoneSpec> zones;
  for (int attempt = 0; zones.size() < 8; ++attempt) {
    if (attempt >= kMaxAttempts) throw RejectionSamplingError("could not place 8 non-overlapping zones");
    Vec2 c{coord(rng), coord(rng)};
    bool clear = std::all_of(zones.begin(), zones.end(),
                             [&](const ZoneSpec& z) { return distance(z.center, c) >= z.radius + r; });
    if (clear) zones.push_back({kColors[zones.size() / 2], c, r});
  }
  return zones;
}

}  // namespace

ResetResult reset_world(const WorldConfig& cfg, std::uint64_t seed, const StartConstraint& constraint) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  ResetResult out{cfg, {}};
  if (cfg.randomize_zones) out.world.zones = sample_zones(cfg, rng);

  const double h = cfg.arena_half_extent;
  std::uniform_real_distribution<double> coord(-h, h);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxAttempts) throw RejectionSamplingError("could not place the robot outside all zones");
    Vec2 p{coord(rng), coord(rng)};
    bool ok = std::all_of(out.world.zones.begin(), out.world.zones.end(),
                          [&](const ZoneSpec& z) { return distance(z.center, p) > z.radius; });
    for (Color c : constraint.keep_away) {
      if (!ok) break;
      ok = boundary_distance(out.world, p, c) >= constraint.clearance;
    }
    if (ok) {
      out.state = {p, angle(rng)};
      return out;
    }
  }
}

std::size_t nearest_zone(const WorldConfig& world, Vec2 p, Color color) {
  std::size_t best = world.zones.size();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < world.zones.size(); ++i) {
    const auto& z = world.zones[i];
    if (z.color != color) continue;
    double d = distance(z.center, p) - z.radius;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best == world.zones.size()) throw std::invalid_argument("no zone of the requested color");
  return best;
}

double boundary_distance(const WorldConfig& world, Vec2 p, Color color) {
  const auto& z = world.zones[nearest_zone(world, p, color)];
  return std::max(0.0, distance(z.center, p) - z.radius);
}

RobotState skill_action(const RobotState& state, const Skill& skill, const WorldConfig& world) {
  const auto& zone = world.zones[nearest_zone(world, state.position, skill.target)];
  const double d = distance(zone.center, state.position);
  if (d < zone.radius) return state;

  const double desired = std::atan2(zone.center.y - state.position.y, zone.center.x - state.position.x);
  const double turn = std::clamp(wrap_angle(desired - state.heading), -world.turn_limit, world.turn_limit);
  RobotState next;
  next.heading = wrap_angle(state.heading + turn);
  const double step = std::min(world.robot_speed, d);
  const double h = world.arena_half_extent;
  next.position.x = std::clamp(state.position.x + step * std::cos(next.heading), -h, h);
  next.position.y = std::clamp(state.position.y + step * std::sin(next.heading), -h, h);
  return next;
}

std::vector<RobotState> execute_skill(const RobotState& state, const Skill& skill, const WorldConfig& world) {
  std::vector<RobotState> traj;
  traj.reserve(static_cast<std::size_t>(world.tau) + 1);
  traj.push_back(state);
  for (int i = 0; i < world.tau; ++i) traj.push_back(skill_action(traj.back(), skill, world));
  return traj;
}

stl::Signal ground_truth_signal(const std::vector<RobotState>& traj, const WorldConfig& world, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (traj.empty()) throw std::invalid_argument("trajectory is empty");
  const double norm = world.diameter();
  stl::Signal s;
  for (Color c : kColors) {
    std::vector<double> samples;
    for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(stride)) {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& z : world.zones) {
        if (z.color == c) best = std::max(best, (z.radius - distance(traj[i].position, z.center)) / norm);
      }
      samples.push_back(best);
    }
    s.set_channel(std::string(1, color_letter(c)), std::move(samples));
  }
  return s;
}

stl::Formula ground_truth_formula(const stl::Formula& vfs_formula) {
  return stl::map_predicates(vfs_formula, [](const stl::Formula& p) {
    return stl::Formula::predicate(p.channel(), p.comparison(), 0.0);
  });
}

}  // namespace vfstl::world
