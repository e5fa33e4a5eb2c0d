#pragma once

#include <cstdint>

namespace vfstl {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for component `stream`, item `index` under `root`. Every random
/// stream in the pipeline is derived from the single root seed this way.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index = 0) {
  return mix64(mix64(mix64(root) ^ (stream * 0xd6e8feb86659fd93ULL)) ^ index);
}

namespace streams {
inline constexpr std::uint64_t kReset = 1;
inline constexpr std::uint64_t kSkillChoice = 2;
inline constexpr std::uint64_t kTraining = 3;
inline constexpr std::uint64_t kPlanner = 4;
inline constexpr std::uint64_t kFormula = 5;
inline constexpr std::uint64_t kBenchSample = 6;
}  // namespace streams

}  // namespace vfstl
