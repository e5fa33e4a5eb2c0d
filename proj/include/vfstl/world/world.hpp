#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfstl/stl/formula.hpp"
#include "vfstl/stl/signal.hpp"

namespace vfstl::world {

/// Zone colors; the enum value doubles as the skill index.
enum class Color { R = 0, J = 1, Y = 2, W = 3 };

inline constexpr std::array<Color, 4> kColors = {Color::R, Color::J, Color::Y, Color::W};
inline constexpr int kColorCount = 4;

char color_letter(Color c);
Color color_from_letter(std::string_view s);
inline int color_index(Color c) { return static_cast<int>(c); }

/// Channel names used for both VFS and ground-truth signals: "R", "J", "Y", "W".
std::vector<std::string> color_channel_names();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

struct ZoneSpec {
  Color color = Color::R;
  Vec2 center;
  double radius = 0.3;

  friend bool operator==(const ZoneSpec&, const ZoneSpec&) = default;
};

struct RobotState {
  Vec2 position;
  double heading = 0.0;

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct Skill {
  int id = 0;
  Color target = Color::R;
};

inline Skill skill_for(int id) { return Skill{id, static_cast<Color>(id)}; }

/// Eight zones on a ring at +/-1.5 with each color on opposite sides.
std::vector<ZoneSpec> default_zones();

struct WorldConfig {
  double arena_half_extent = 2.0;
  double robot_speed = 0.1;
  int tau = 40;
  std::uint64_t rng_seed = 0;
  double turn_limit = std::numbers::pi / 8.0;
  /// Re-sample zone centers on every reset.
  bool randomize_zones = false;
  double zone_radius = 0.3;
  std::vector<ZoneSpec> zones = default_zones();

  /// Side length of the square arena; normalizes both distance signals.
  double diameter() const { return 2.0 * arena_half_extent; }

  /// Throws std::invalid_argument on any broken invariant.
  void validate() const;

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

class RejectionSamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extra start-state requirement: stay at least `clearance` away from the
/// boundary of every zone of the listed colors.
struct StartConstraint {
  std::vector<Color> keep_away;
  double clearance = 0.0;
};

struct ResetResult {
  WorldConfig world;  // with the zone layout in force for this episode
  RobotState state;
};

/// Places the robot uniformly in the arena outside all zones, with uniform
/// heading. Zones are re-sampled without overlap when cfg.randomize_zones.
ResetResult reset_world(const WorldConfig& cfg, std::uint64_t seed, const StartConstraint& constraint = {});

/// Index of the zone of `color` whose boundary is nearest; ties keep the
/// lowest index.
std::size_t nearest_zone(const WorldConfig& world, Vec2 p, Color color);

/// Distance from p to the boundary of the nearest zone of `color`, 0 inside.
double boundary_distance(const WorldConfig& world, Vec2 p, Color color);

/// One environment step of the reference goal-reaching controller.
RobotState skill_action(const RobotState& state, const Skill& skill, const WorldConfig& world);

/// world.tau applications of skill_action; returns tau + 1 states.
std::vector<RobotState> execute_skill(const RobotState& state, const Skill& skill, const WorldConfig& world);

/// Signed zone-distance channel per color, (r - |p - c|) / diameter maximized
/// over that color's zones, sampled every `stride` states.
stl::Signal ground_truth_signal(const std::vector<RobotState>& traj, const WorldConfig& world, int stride);

/// Same formula with every predicate threshold moved to 0, so each
/// predicate reads "inside (or outside) a zone of that color".
stl::Formula ground_truth_formula(const stl::Formula& vfs_formula);

}  // namespace vfstl::world
