#pragma once

// Reference implementations used only by the tests. They follow the textbook
// definitions as literally as possible and share no code with the library
// beyond the Formula and Signal containers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfstl/stl/formula.hpp"
#include "vfstl/stl/signal.hpp"
#include "vfstl/vfs/dynamics.hpp"
#include "vfstl/vfs/embedding.hpp"
#include "vfstl/world/world.hpp"

namespace oracle {

using vfstl::stl::Comparison;
using vfstl::stl::Formula;
using vfstl::stl::Interval;
using vfstl::stl::Kind;
using vfstl::stl::Signal;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Robustness with F and G rewritten as until over "true" (robustness +inf)
// and Or rewritten through De Morgan.
inline double rho(const Signal& s, const Formula& f, int t) {
  switch (f.kind()) {
    case Kind::Predicate: {
      const double x = s.channel(f.channel()).at(static_cast<std::size_t>(t));
      const bool upper = f.comparison() == Comparison::Greater || f.comparison() == Comparison::GreaterEqual;
      return upper ? x - f.threshold() : f.threshold() - x;
    }
    case Kind::Not:
      return -rho(s, f.operand(0), t);
    case Kind::And:
      return std::min(rho(s, f.operand(0), t), rho(s, f.operand(1), t));
    case Kind::Or:
      return -std::min(-rho(s, f.operand(0), t), -rho(s, f.operand(1), t));
    case Kind::Until:
    case Kind::Eventually:
    case Kind::Globally: {
      const Interval w = f.interval();
      auto lhs = [&](int u) { return f.kind() == Kind::Until ? rho(s, f.operand(0), u) : kInf; };
      auto rhs = [&](int u) {
        const Formula& g = f.kind() == Kind::Until ? f.operand(1) : f.operand(0);
        return f.kind() == Kind::Globally ? -rho(s, g, u) : rho(s, g, u);
      };
      double best = -kInf;
      for (int tp = t + w.lo; tp <= t + w.hi; ++tp) {
        double v = rhs(tp);
        for (int tpp = t; tpp <= tp; ++tpp) v = std::min(v, lhs(tpp));
        best = std::max(best, v);
      }
      return f.kind() == Kind::Globally ? -best : best;
    }
  }
  throw std::logic_error("unreachable");
}

// Boolean semantics, written independently of vfstl::stl::satisfies.
inline bool sat(const Signal& s, const Formula& f, int t) {
  switch (f.kind()) {
    case Kind::Predicate: {
      const double x = s.channel(f.channel()).at(static_cast<std::size_t>(t));
      switch (f.comparison()) {
        case Comparison::Greater: return x > f.threshold();
        case Comparison::GreaterEqual: return x >= f.threshold();
        case Comparison::Less: return x < f.threshold();
        case Comparison::LessEqual: return x <= f.threshold();
      }
      return false;
    }
    case Kind::Not: return !sat(s, f.operand(0), t);
    case Kind::And: return sat(s, f.operand(0), t) && sat(s, f.operand(1), t);
    case Kind::Or: return sat(s, f.operand(0), t) || sat(s, f.operand(1), t);
    case Kind::Eventually:
      for (int u = t + f.interval().lo; u <= t + f.interval().hi; ++u) {
        if (sat(s, f.operand(0), u)) return true;
      }
      return false;
    case Kind::Globally:
      for (int u = t + f.interval().lo; u <= t + f.interval().hi; ++u) {
        if (!sat(s, f.operand(0), u)) return false;
      }
      return true;
    case Kind::Until:
      for (int u = t + f.interval().lo; u <= t + f.interval().hi; ++u) {
        if (!sat(s, f.operand(1), u)) continue;
        bool held = true;
        for (int v = t; v <= u && held; ++v) held = sat(s, f.operand(0), v);
        if (held) return true;
      }
      return false;
  }
  throw std::logic_error("unreachable");
}

struct FormulaGen {
  std::vector<std::string> channels = {"x", "y", "z"};
  int max_depth = 3;
  int max_time = 6;
  bool negation_free = false;
  bool upper_only = false;  // only > and >=

  Formula operator()(std::mt19937_64& rng, int depth = 0) const {
    std::uniform_int_distribution<int> kind(0, depth >= max_depth ? 0 : 6);
    int k = kind(rng);
    if (negation_free && k == 1) k = 2;
    switch (k) {
      case 0: {
        std::uniform_int_distribution<std::size_t> ch(0, channels.size() - 1);
        std::uniform_int_distribution<int> cmp(0, upper_only ? 1 : 3);
        // Thresholds on a 1/8 grid keep formatting exact and make ties possible.
        std::uniform_int_distribution<int> th(-8, 16);
        return Formula::predicate(channels[ch(rng)], static_cast<Comparison>(cmp(rng)), th(rng) / 8.0);
      }
      case 1: return Formula::negation((*this)(rng, depth + 1));
      case 2: return Formula::conjunction((*this)(rng, depth + 1), (*this)(rng, depth + 1));
      case 3: return Formula::disjunction((*this)(rng, depth + 1), (*this)(rng, depth + 1));
      case 4: return Formula::until(window(rng), (*this)(rng, depth + 1), (*this)(rng, depth + 1));
      case 5: return Formula::eventually(window(rng), (*this)(rng, depth + 1));
      default: return Formula::globally(window(rng), (*this)(rng, depth + 1));
    }
  }

  Interval window(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> d(0, max_time);
    int a = d(rng), b = d(rng);
    return {std::min(a, b), std::max(a, b)};
  }
};

inline Signal random_signal(std::mt19937_64& rng, const std::vector<std::string>& channels, std::size_t length,
                            double lo = -1.0, double hi = 2.0) {
  std::uniform_real_distribution<double> v(lo, hi);
  Signal s;
  for (const auto& c : channels) {
    std::vector<double> xs(length);
    for (auto& x : xs) x = v(rng);
    s.set_channel(c, std::move(xs));
  }
  return s;
}

// Forward model that runs the simulator. States are recovered from the
// exact VFS point they produced, so it only answers for points it has
// seen (the start point and its own predictions).
class SimulatorDynamics : public vfstl::vfs::VfsDynamics {
 public:
  SimulatorDynamics(vfstl::world::WorldConfig world, const vfstl::world::RobotState& start) : world_(std::move(world)) {
    remember(start);
  }

  int skill_count() const override { return vfstl::world::kColorCount; }

  vfstl::vfs::VfsPoint predict(const vfstl::vfs::VfsPoint& z, int skill) const override {
    auto it = states_.find(z.z);
    if (it == states_.end()) throw std::out_of_range("SimulatorDynamics: unknown VFS point");
    auto traj = vfstl::world::execute_skill(it->second, vfstl::world::skill_for(skill), world_);
    return remember(traj.back());
  }

  vfstl::vfs::VfsPoint remember(const vfstl::world::RobotState& s) const {
    auto z = vfstl::vfs::embed_state(s, world_);
    states_.emplace(z.z, s);
    return z;
  }

 private:
  vfstl::world::WorldConfig world_;
  mutable std::map<std::vector<double>, vfstl::world::RobotState> states_;
};

}  // namespace oracle
