#include "vfstl/bench/tasks.hpp"

#include <algorithm>
#include <random>

namespace vfstl::bench {

using stl::Formula;
using stl::Interval;

std::string family_name(TaskFamily f) {
  switch (f) {
    case TaskFamily::Sequencing: return "sequencing";
    case TaskFamily::ReachAvoid: return "reach_avoid";
    case TaskFamily::Stability: return "stability";
  }
  return "?";
}

TaskFamily family_from_name(std::string_view name) {
  if (name == "sequencing" || name == "chain") return TaskFamily::Sequencing;
  if (name == "reach_avoid" || name == "reach-avoid") return TaskFamily::ReachAvoid;
  if (name == "stability" || name == "stable") return TaskFamily::Stability;
  throw std::invalid_argument("unknown task family '" + std::string(name) + "'");
}

std::vector<TaskFamily> all_families() {
  return {TaskFamily::Sequencing, TaskFamily::ReachAvoid, TaskFamily::Stability};
}

std::vector<TaskFamily> parse_families(std::string_view list) {
  if (list == "all") return all_families();
  std::vector<TaskFamily> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = list.substr(start, comma - start);
    if (!item.empty()) out.push_back(family_from_name(item));
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("no task families given");
  return out;
}

namespace {

constexpr int kMaxWindow = 4;

std::vector<int> split_windows(int n, int horizon, std::mt19937_64& rng) {
  const int lo = horizon >= 2 * n ? 2 : 1;
  if (n * lo > horizon) {
    throw InfeasibleTaskError("cannot fit " + std::to_string(n) + " windows into horizon " + std::to_string(horizon));
  }
  std::vector<int> b;
  int used = 0;
  for (int i = 0; i < n; ++i) {
    const int reserve = (n - i - 1) * lo;
    const int hi = std::min(kMaxWindow, horizon - used - reserve);
    std::uniform_int_distribution<int> pick(lo, std::max(lo, hi));
    b.push_back(pick(rng));
    used += b.back();
  }
  return b;
}

Formula reach(const std::string& c) { return Formula::predicate(c, stl::Comparison::Greater, kTaskThreshold); }

}  // namespace

Formula gen_formula(TaskFamily family, const std::vector<std::string>& colors, int horizon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> pool = colors;
  std::shuffle(pool.begin(), pool.end(), rng);

  switch (family) {
    case TaskFamily::Sequencing: {
      if (pool.size() < 2) throw InfeasibleTaskError("sequencing needs at least 2 colors");
      std::uniform_int_distribution<int> count(2, static_cast<int>(std::min<std::size_t>(3, pool.size())));
      int n = count(rng);
      if (horizon < n) n = 2;
      auto b = split_windows(n, horizon, rng);
      Formula f = Formula::eventually({0, b[static_cast<std::size_t>(n - 1)]}, reach(pool[static_cast<std::size_t>(n - 1)]));
      for (int i = n - 2; i >= 0; --i) {
        f = Formula::eventually({0, b[static_cast<std::size_t>(i)]},
                                Formula::conjunction(reach(pool[static_cast<std::size_t>(i)]), f));
      }
      return f;
    }
    case TaskFamily::ReachAvoid: {
      if (pool.size() < 2) throw InfeasibleTaskError("reach-avoid needs at least 2 colors");
      const int max_levels = pool.size() >= 4 ? 2 : 1;
      std::uniform_int_distribution<int> count(1, max_levels);
      int levels = count(rng);
      if (horizon < levels) levels = 1;
      auto b = split_windows(levels, horizon, rng);
      // Goals take the first `levels` colors, avoids the next ones.
      auto goal = [&](int i) { return pool[static_cast<std::size_t>(i)]; };
      auto avoid = [&](int i) { return pool[static_cast<std::size_t>(levels + i)]; };
      Formula f = Formula::until({0, b[static_cast<std::size_t>(levels - 1)]},
                                 Formula::negation(reach(avoid(levels - 1))), reach(goal(levels - 1)));
      for (int i = levels - 2; i >= 0; --i) {
        f = Formula::until({0, b[static_cast<std::size_t>(i)]}, Formula::negation(reach(avoid(i))),
                           Formula::conjunction(reach(goal(i)), f));
      }
      return f;
    }
    case TaskFamily::Stability: {
      const int lo = horizon >= 4 ? 2 : 1;
      if (horizon < 2 * lo) throw InfeasibleTaskError("stability needs a horizon of at least 2");
      std::uniform_int_distribution<int> reach_window(lo, std::min(kMaxWindow, horizon - lo));
      const int a = reach_window(rng);
      std::uniform_int_distribution<int> hold_window(lo, horizon - a);
      const int d = hold_window(rng);
      return Formula::eventually({0, a}, Formula::globally({0, d}, reach(pool.front())));
    }
  }
  throw std::invalid_argument("unknown task family");
}

namespace {

void collect_negated(const Formula& f, bool negated, std::vector<std::pair<std::string, double>>& out) {
  if (f.kind() == stl::Kind::Predicate) {
    if (negated) out.emplace_back(f.channel(), f.threshold());
    return;
  }
  const bool flip = f.kind() == stl::Kind::Not;
  for (const auto& op : f.operands()) collect_negated(op, negated != flip, out);
}

}  // namespace

world::StartConstraint start_constraint_for(const Formula& phi, const world::WorldConfig& world) {
  std::vector<std::pair<std::string, double>> negated;
  collect_negated(phi, false, negated);
  world::StartConstraint c;
  for (const auto& [channel, threshold] : negated) {
    world::Color color = world::color_from_letter(channel);
    if (std::find(c.keep_away.begin(), c.keep_away.end(), color) == c.keep_away.end()) c.keep_away.push_back(color);
    c.clearance = std::max(c.clearance, (1.0 - threshold) * world.diameter());
  }
  return c;
}

}  // namespace vfstl::bench
