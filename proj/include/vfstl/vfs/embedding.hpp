#pragma once

#include <vector>

#include "vfstl/world/world.hpp"

namespace vfstl::vfs {

/// Stacked skill values, one component per skill, each in [0, 1].
struct VfsPoint {
  std::vector<double> z;

  std::size_t size() const { return z.size(); }
  double operator[](std::size_t i) const { return z[i]; }

  friend bool operator==(const VfsPoint&, const VfsPoint&) = default;
};

/// Analytic critic: component i is clamp(1 - d_i / diameter, 0, 1) where d_i
/// is the distance to the nearest zone boundary of skill i's color.
VfsPoint embed_state(const world::RobotState& state, const world::WorldConfig& world);

}  // namespace vfstl::vfs
