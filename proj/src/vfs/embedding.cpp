#include "vfstl/vfs/embedding.hpp"

#include <algorithm>

namespace vfstl::vfs {

VfsPoint embed_state(const world::RobotState& state, const world::WorldConfig& world) {
  VfsPoint p;
  p.z.reserve(world::kColorCount);
  const double reach = world.diameter();
  for (world::Color c : world::kColors) {
    double d = world::boundary_distance(world, state.position, c);
    p.z.push_back(std::clamp(1.0 - d / reach, 0.0, 1.0));
  }
  return p;
}

}  // namespace vfstl::vfs
