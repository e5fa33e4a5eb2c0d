#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "vfstl/stl/monitor.hpp"
#include "vfstl/stl/parser.hpp"
#include "vfstl/world/io.hpp"
#include "vfstl/world/world.hpp"

using namespace vfstl::world;

namespace {

ZoneSpec first_zone(const WorldConfig& w, Color c) {
  for (const auto& z : w.zones) {
    if (z.color == c) return z;
  }
  throw std::logic_error("no zone");
}

}  // namespace

TEST(WorldConfig, DefaultLayoutIsValid) {
  WorldConfig w;
  EXPECT_NO_THROW(w.validate());
  EXPECT_DOUBLE_EQ(w.diameter(), 4.0);
  for (Color c : kColors) {
    int n = 0;
    for (const auto& z : w.zones) n += z.color == c;
    EXPECT_EQ(n, 2);
  }
}

TEST(WorldConfig, RejectsBrokenLayouts) {
  WorldConfig w;
  w.zones.pop_back();
  EXPECT_THROW(w.validate(), std::invalid_argument);
  WorldConfig far;
  far.zones[0].center = {5.0, 0.0};
  EXPECT_THROW(far.validate(), std::invalid_argument);
  WorldConfig slow;
  slow.robot_speed = 0;
  EXPECT_THROW(slow.validate(), std::invalid_argument);
}

TEST(WorldConfig, JsonRoundTrip) {
  WorldConfig w;
  w.tau = 17;
  w.randomize_zones = true;
  EXPECT_EQ(world_config_from_json(to_json(w)), w);
}

TEST(Reset, DeterministicPerSeed) {
  WorldConfig w;
  EXPECT_EQ(reset_world(w, 42).state, reset_world(w, 42).state);
}

TEST(Reset, SeedsSpreadPositions) {
  WorldConfig w;
  std::set<std::pair<double, double>> seen;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto r = reset_world(w, s);
    seen.insert({r.state.position.x, r.state.position.y});
    for (const auto& z : w.zones) EXPECT_GT(distance(z.center, r.state.position), z.radius);
    EXPECT_LE(std::abs(r.state.position.x), w.arena_half_extent);
    EXPECT_LE(std::abs(r.state.position.y), w.arena_half_extent);
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Reset, StartConstraintHonored) {
  WorldConfig w;
  StartConstraint c{{Color::R, Color::Y}, 0.8};
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto r = reset_world(w, s, c);
    EXPECT_GE(boundary_distance(w, r.state.position, Color::R), 0.8);
    EXPECT_GE(boundary_distance(w, r.state.position, Color::Y), 0.8);
  }
}

TEST(Reset, RandomizedZonesStayValid) {
  WorldConfig w;
  w.randomize_zones = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto r = reset_world(w, s);
    EXPECT_NO_THROW(r.world.validate());
    EXPECT_NE(r.world.zones, w.zones);
  }
}

TEST(Reset, ImpossibleConstraintThrows) {
  WorldConfig w;
  StartConstraint c{{Color::R, Color::J, Color::Y, Color::W}, 3.0};
  EXPECT_THROW(reset_world(w, 1, c), RejectionSamplingError);
}

TEST(Skill, HoldsInsideTarget) {
  WorldConfig w;
  auto z = first_zone(w, Color::R);
  RobotState s{z.center, 0.3};
  EXPECT_EQ(skill_action(s, skill_for(color_index(Color::R)), w), s);
}

TEST(Skill, AlignedStepShortensDistanceBySpeed) {
  WorldConfig w;
  auto z = first_zone(w, Color::J);
  Vec2 p{z.center.x, z.center.y - 1.0};
  RobotState s{p, std::numbers::pi / 2};
  auto next = skill_action(s, skill_for(color_index(Color::J)), w);
  EXPECT_NEAR(distance(next.position, z.center), 1.0 - w.robot_speed, 1e-12);
}

TEST(Skill, ZeroTauKeepsState) {
  WorldConfig w;
  w.tau = 0;
  RobotState s{{0.1, 0.2}, 1.0};
  auto traj = execute_skill(s, skill_for(0), w);
  ASSERT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj[0], s);
}

TEST(Skill, ReachesTargetAndIsReplayable) {
  WorldConfig w;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto r = reset_world(w, seed);
    for (int k = 0; k < kColorCount; ++k) {
      auto traj = execute_skill(r.state, skill_for(k), w);
      ASSERT_EQ(traj.size(), static_cast<std::size_t>(w.tau) + 1);
      EXPECT_EQ(boundary_distance(w, traj.back().position, static_cast<Color>(k)), 0.0);
      EXPECT_LE(boundary_distance(w, traj.back().position, static_cast<Color>(k)),
                boundary_distance(w, r.state.position, static_cast<Color>(k)));
      EXPECT_EQ(traj, execute_skill(r.state, skill_for(k), w));
    }
  }
}

TEST(GroundTruth, ZoneCenterValue) {
  WorldConfig w;
  auto z = first_zone(w, Color::R);
  auto s = ground_truth_signal({RobotState{z.center, 0}}, w, 1);
  EXPECT_DOUBLE_EQ(s.channel("R")[0], z.radius / w.diameter());
}

TEST(GroundTruth, SignMatchesZoneMembership) {
  WorldConfig w;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<RobotState> traj;
  for (int i = 0; i < 2000; ++i) traj.push_back({{u(rng), u(rng)}, 0});
  auto s = ground_truth_signal(traj, w, 1);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (Color c : kColors) {
      bool inside = false;
      for (const auto& z : w.zones) inside |= z.color == c && distance(z.center, traj[i].position) < z.radius;
      EXPECT_EQ(s.channel(std::string(1, color_letter(c)))[i] > 0, inside);
    }
  }
}

TEST(GroundTruth, StrideSamplesMacroSteps) {
  WorldConfig w;
  std::vector<RobotState> traj(2 * w.tau + 1);
  auto s = ground_truth_signal(traj, w, w.tau);
  EXPECT_EQ(s.length(), 3u);
  EXPECT_THROW(ground_truth_signal(traj, w, 0), std::invalid_argument);
}

TEST(GroundTruth, FormulaThresholdsMovedToZero) {
  auto f = ground_truth_formula(vfstl::stl::parse_formula("(!(Y>0.8)) U[0,2] (R>0.8 & F[0,1] W>0.8)"));
  EXPECT_EQ(vfstl::stl::format_formula(f), "(!(Y>0)) U[0,2] (R>0 & F[0,1] W>0)");
}

TEST(TrajectoryCsv, Columns) {
  std::ostringstream out;
  write_trajectory_csv(out, {RobotState{{0, 0}, 0}, RobotState{{0.5, -1}, 1}}, {-1, 2});
  EXPECT_EQ(out.str(), "step,x,y,heading,active_skill\n0,0,0,0,-1\n1,0.5,-1,1,2\n");
}
