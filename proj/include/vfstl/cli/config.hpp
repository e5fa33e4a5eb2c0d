#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "vfstl/planner/mcts.hpp"
#include "vfstl/vfs/dynamics.hpp"
#include "vfstl/world/world.hpp"

namespace vfstl::cli {

inline constexpr const char* kArtifactVersion = "vfstl-1";

struct CollectSettings {
  int episodes = 1000;
  int macro_steps = 10;  // skills per episode
};

struct BenchSettings {
  int samples = 50;
  std::string families = "all";
  std::string mode = "open_loop";  // or "mpc"
  int parallel = 1;
};

/// Everything a subcommand needs. Loaded from a JSON document, then
/// overridden by command-line flags.
struct RunConfig {
  std::uint64_t seed = 0;
  world::WorldConfig world;
  CollectSettings collect;
  vfs::TrainOptions train;
  planner::PlannerConfig planner;
  BenchSettings bench;

  std::string formula;
  std::string signal;
  std::string dataset;
  std::string model;
  int t = 0;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Missing keys keep their defaults; unknown enum spellings throw ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// Reads a config document. A run manifest is accepted as well: its
/// "config" member is used.
RunConfig load_config(const std::filesystem::path& path);

std::string ucb_variant_name(planner::UcbVariant v);
planner::UcbVariant ucb_variant_from_name(std::string_view s);
std::string search_mode_name(planner::SearchMode m);
planner::SearchMode search_mode_from_name(std::string_view s);

}  // namespace vfstl::cli
