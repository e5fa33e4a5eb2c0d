#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vfstl/stl/formula.hpp"
#include "vfstl/world/world.hpp"

namespace vfstl::bench {

enum class TaskFamily { Sequencing, ReachAvoid, Stability };

inline constexpr double kTaskThreshold = 0.8;

std::string family_name(TaskFamily f);
TaskFamily family_from_name(std::string_view name);
/// "all" or a comma-separated list of family names.
std::vector<TaskFamily> parse_families(std::string_view list);
std::vector<TaskFamily> all_families();

class InfeasibleTaskError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Random task of the given family over `colors` (channel names), with
/// horizon at most `horizon`. Windows are [0, b] with b in 2..4 when the
/// horizon allows, 1..4 otherwise.
///
///   sequencing   F[0,b1] (c1>0.8 & F[0,b2] (c2>0.8 & F[0,b3] c3>0.8))   2-3 colors
///   reach_avoid  (!(a1>0.8)) U[0,b1] (g1>0.8 & ((!(a2>0.8)) U[0,b2] g2>0.8))   1-2 levels
///   stability    F[0,a] G[0,d] c>0.8
stl::Formula gen_formula(TaskFamily family, const std::vector<std::string>& colors, int horizon, std::uint64_t seed);

/// Start-state requirement that keeps every negated predicate false at
/// t = 0: stay far enough from the zones of those colors that their VFS
/// component sits at or below the predicate threshold.
world::StartConstraint start_constraint_for(const stl::Formula& phi, const world::WorldConfig& world);

}  // namespace vfstl::bench
