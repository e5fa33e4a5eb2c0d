#include "vfstl/cli/config.hpp"

#include <fstream>

#include "vfstl/world/io.hpp"

namespace vfstl::cli {

std::string ucb_variant_name(planner::UcbVariant v) { return v == planner::UcbVariant::Sqrt ? "sqrt" : "uct"; }

planner::UcbVariant ucb_variant_from_name(std::string_view s) {
  if (s == "sqrt") return planner::UcbVariant::Sqrt;
  if (s == "uct") return planner::UcbVariant::Uct;
  throw ConfigError("unknown ucb variant '" + std::string(s) + "' (expected sqrt or uct)");
}

std::string search_mode_name(planner::SearchMode m) { return m == planner::SearchMode::Mcts ? "mcts" : "exhaustive"; }

planner::SearchMode search_mode_from_name(std::string_view s) {
  if (s == "mcts") return planner::SearchMode::Mcts;
  if (s == "exhaustive") return planner::SearchMode::Exhaustive;
  throw ConfigError("unknown search mode '" + std::string(s) + "' (expected mcts or exhaustive)");
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config document must be a JSON object");
  RunConfig c;
  try {
    c.seed = j.value("seed", c.seed);
    if (j.contains("world")) c.world = world::world_config_from_json(j.at("world"));
    if (j.contains("collect")) {
      const auto& s = j.at("collect");
      c.collect.episodes = s.value("episodes", c.collect.episodes);
      c.collect.macro_steps = s.value("macro_steps", c.collect.macro_steps);
    }
    if (j.contains("train")) {
      const auto& s = j.at("train");
      c.train.hidden_width = s.value("hidden_width", c.train.hidden_width);
      c.train.epochs = s.value("epochs", c.train.epochs);
      c.train.learning_rate = s.value("learning_rate", c.train.learning_rate);
      c.train.batch_size = s.value("batch_size", c.train.batch_size);
      c.train.holdout_fraction = s.value("holdout_fraction", c.train.holdout_fraction);
    }
    if (j.contains("planner")) {
      const auto& s = j.at("planner");
      c.planner.horizon = s.value("horizon", c.planner.horizon);
      c.planner.iterations = s.value("iterations", c.planner.iterations);
      c.planner.ucb_c = s.value("ucb_c", c.planner.ucb_c);
      c.planner.ucb_variant = ucb_variant_from_name(s.value("ucb_variant", std::string("sqrt")));
      c.planner.replan_interval = s.value("replan_interval", c.planner.replan_interval);
      c.planner.search = search_mode_from_name(s.value("search", std::string("mcts")));
    }
    if (j.contains("bench")) {
      const auto& s = j.at("bench");
      c.bench.samples = s.value("samples", c.bench.samples);
      c.bench.families = s.value("families", c.bench.families);
      c.bench.mode = s.value("mode", c.bench.mode);
      c.bench.parallel = s.value("parallel", c.bench.parallel);
    }
    c.formula = j.value("formula", c.formula);
    c.signal = j.value("signal", c.signal);
    c.dataset = j.value("dataset", c.dataset);
    c.model = j.value("model", c.model);
    c.t = j.value("t", c.t);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return c;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"world", world::to_json(c.world)},
          {"collect", {{"episodes", c.collect.episodes}, {"macro_steps", c.collect.macro_steps}}},
          {"train",
           {{"hidden_width", c.train.hidden_width},
            {"epochs", c.train.epochs},
            {"learning_rate", c.train.learning_rate},
            {"batch_size", c.train.batch_size},
            {"holdout_fraction", c.train.holdout_fraction}}},
          {"planner",
           {{"horizon", c.planner.horizon},
            {"iterations", c.planner.iterations},
            {"ucb_c", c.planner.ucb_c},
            {"ucb_variant", ucb_variant_name(c.planner.ucb_variant)},
            {"replan_interval", c.planner.replan_interval},
            {"search", search_mode_name(c.planner.search)}}},
          {"bench",
           {{"samples", c.bench.samples},
            {"families", c.bench.families},
            {"mode", c.bench.mode},
            {"parallel", c.bench.parallel}}},
          {"formula", c.formula},
          {"signal", c.signal},
          {"dataset", c.dataset},
          {"model", c.model},
          {"t", c.t}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("subcommand")) return config_from_json(j.at("config"));
  return config_from_json(j);
}

}  // namespace vfstl::cli
