#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "vfstl/vfs/embedding.hpp"

namespace vfstl::vfs {

struct Transition {
  VfsPoint z;
  int skill = 0;
  VfsPoint next;

  friend bool operator==(const Transition&, const Transition&) = default;
};

using TransitionDataset = std::vector<Transition>;

/// Random skill execution: per episode a fresh reset, then
/// steps_per_episode / tau uniformly chosen skills, one record each.
TransitionDataset collect_transitions(const world::WorldConfig& world, int episodes, int steps_per_episode,
                                      std::uint64_t seed);

/// Columns z0..z{k-1}, skill, zn0..zn{k-1}.
void write_dataset_csv(std::ostream& out, const TransitionDataset& data);
TransitionDataset read_dataset_csv(std::istream& in);

}  // namespace vfstl::vfs
