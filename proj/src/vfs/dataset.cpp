#include "vfstl/vfs/dataset.hpp"

#include <charconv>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vfstl/common/seed.hpp"

namespace vfstl::vfs {

TransitionDataset collect_transitions(const world::WorldConfig& world, int episodes, int steps_per_episode,
                                      std::uint64_t seed) {
  if (world.tau <= 0) throw std::invalid_argument("collection needs tau > 0");
  if (episodes < 0 || steps_per_episode < 0 || steps_per_episode % world.tau != 0) {
    throw std::invalid_argument("steps_per_episode (" + std::to_string(steps_per_episode) +
                                ") must be a non-negative multiple of tau (" + std::to_string(world.tau) + ")");
  }
  const int macro_steps = steps_per_episode / world.tau;
  TransitionDataset data;
  data.reserve(static_cast<std::size_t>(episodes) * static_cast<std::size_t>(macro_steps));
  for (int e = 0; e < episodes; ++e) {
    auto reset = world::reset_world(world, derive_seed(seed, streams::kReset, static_cast<std::uint64_t>(e)));
    std::mt19937_64 rng(derive_seed(seed, streams::kSkillChoice, static_cast<std::uint64_t>(e)));
    std::uniform_int_distribution<int> pick(0, world::kColorCount - 1);
    world::RobotState state = reset.state;
    for (int m = 0; m < macro_steps; ++m) {
      const int skill = pick(rng);
      auto traj = world::execute_skill(state, world::skill_for(skill), reset.world);
      data.push_back({embed_state(state, reset.world), skill, embed_state(traj.back(), reset.world)});
      state = traj.back();
    }
  }
  return data;
}

void write_dataset_csv(std::ostream& out, const TransitionDataset& data) {
  const std::size_t k = data.empty() ? world::kColorCount : data.front().z.size();
  for (std::size_t i = 0; i < k; ++i) out << 'z' << i << ',';
  out << "skill";
  for (std::size_t i = 0; i < k; ++i) out << ",zn" << i;
  out << '\n';
  char buf[64];
  auto num = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
  };
  for (const auto& r : data) {
    for (double v : r.z.z) out << num(v) << ',';
    out << r.skill;
    for (double v : r.next.z) out << ',' << num(v);
    out << '\n';
  }
}

TransitionDataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset CSV is empty");
  std::size_t cols = 1;
  for (char c : line) cols += c == ',';
  if (cols < 3 || cols % 2 == 0) throw std::invalid_argument("dataset CSV header has an unexpected column count");
  const std::size_t k = (cols - 1) / 2;
  TransitionDataset data;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc{}) throw std::invalid_argument("dataset CSV row " + std::to_string(row) + " is malformed");
      v.push_back(x);
    }
    if (v.size() != cols) throw std::invalid_argument("dataset CSV row " + std::to_string(row) + " has wrong width");
    Transition t;
    t.z.z.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    t.skill = static_cast<int>(v[k]);
    t.next.z.assign(v.begin() + static_cast<std::ptrdiff_t>(k) + 1, v.end());
    if (t.skill < 0 || static_cast<std::size_t>(t.skill) >= k) {
      throw std::invalid_argument("dataset CSV row " + std::to_string(row) + " has skill out of range");
    }
    data.push_back(std::move(t));
  }
  return data;
}

}  // namespace vfstl::vfs
