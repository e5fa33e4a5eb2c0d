#include "vfstl/cli/commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "vfstl/bench/benchmark.hpp"
#include "vfstl/bench/summary.hpp"
#include "vfstl/cli/config.hpp"
#include "vfstl/common/seed.hpp"
#include "vfstl/planner/mpc.hpp"
#include "vfstl/stl/monitor.hpp"
#include "vfstl/stl/parser.hpp"
#include "vfstl/vfs/embedding.hpp"
#include "vfstl/world/io.hpp"

namespace fs = std::filesystem;

namespace vfstl::cli {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "vfstl_out";
  std::optional<std::string> formula, signal, dataset, model, ucb_variant, families, bench_mode, search;
  std::optional<int> t, tau, horizon, iterations, replan_interval, samples, parallel, episodes, macro_steps, epochs;
  std::optional<double> ucb_c;
};

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  c.world.rng_seed = c.seed;
  if (f.formula) c.formula = *f.formula;
  if (f.signal) c.signal = *f.signal;
  if (f.dataset) c.dataset = *f.dataset;
  if (f.model) c.model = *f.model;
  if (f.t) c.t = *f.t;
  if (f.tau) c.world.tau = *f.tau;
  if (f.horizon) c.planner.horizon = *f.horizon;
  if (f.iterations) c.planner.iterations = *f.iterations;
  if (f.ucb_c) c.planner.ucb_c = *f.ucb_c;
  if (f.ucb_variant) c.planner.ucb_variant = ucb_variant_from_name(*f.ucb_variant);
  if (f.search) c.planner.search = search_mode_from_name(*f.search);
  if (f.replan_interval) c.planner.replan_interval = *f.replan_interval;
  if (f.samples) c.bench.samples = *f.samples;
  if (f.families) c.bench.families = *f.families;
  if (f.bench_mode) c.bench.mode = *f.bench_mode;
  if (f.parallel) c.bench.parallel = *f.parallel;
  if (f.episodes) c.collect.episodes = *f.episodes;
  if (f.macro_steps) c.collect.macro_steps = *f.macro_steps;
  if (f.epochs) c.train.epochs = *f.epochs;
  c.train.seed = c.seed;
  c.planner.seed = derive_seed(c.seed, streams::kPlanner);
  try {
    c.world.validate();
    c.planner.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.bench.mode != "open_loop" && c.bench.mode != "mpc") {
    throw ConfigError("bench mode must be open_loop or mpc, got '" + c.bench.mode + "'");
  }
  return c;
}

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("no ") + what + " given");
  std::ifstream in(path);
  if (!in) throw InputError(std::string("cannot open ") + what + " " + path);
  return in;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_file(path, j.dump(2) + "\n"); }

void write_manifest(const fs::path& dir, const std::string& subcommand, const RunConfig& c,
                    const std::vector<std::string>& outputs) {
  write_json(dir / "manifest.json", {{"subcommand", subcommand},
                                     {"artifact_version", kArtifactVersion},
                                     {"seed", c.seed},
                                     {"config", to_json(c)},
                                     {"output_dir", dir.string()},
                                     {"outputs", outputs}});
}

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

vfs::DynamicsModel load_model(const RunConfig& c) {
  auto in = open_input(c.model, "model");
  try {
    return vfs::dynamics_model_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("model " + c.model + " is malformed: " + e.what());
  }
}

stl::Formula require_formula(const RunConfig& c) {
  if (c.formula.empty()) throw InputError("no formula given");
  return stl::parse_formula(c.formula);
}

nlohmann::json points_json(const std::vector<vfs::VfsPoint>& pts) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : pts) a.push_back(p.z);
  return a;
}

nlohmann::json state_json(const world::RobotState& s) {
  return {{"x", s.position.x}, {"y", s.position.y}, {"heading", s.heading}};
}

int cmd_monitor(const RunConfig& c, std::ostream& out) {
  stl::Formula phi = require_formula(c);
  auto in = open_input(c.signal, "signal");
  stl::Signal s = stl::read_signal_csv(in);
  const double rho = stl::robustness(s, phi, c.t);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", rho);
  out << buf << ' ' << (rho > 0 ? "SAT" : rho < 0 ? "UNSAT" : "BOUNDARY") << '\n';
  return rho > 0 ? exit_code::kOk : exit_code::kNotSatisfied;
}

int cmd_collect(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  auto data = vfs::collect_transitions(c.world, c.collect.episodes, c.collect.macro_steps * c.world.tau, c.seed);
  std::ostringstream csv;
  vfs::write_dataset_csv(csv, data);
  write_file(dir / "dataset.csv", csv.str());
  write_manifest(dir, "collect", c, {"dataset.csv"});
  out << "wrote " << data.size() << " transitions to " << (dir / "dataset.csv").string() << '\n';
  return exit_code::kOk;
}

int cmd_train(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  auto in = open_input(c.dataset, "dataset");
  vfs::TransitionDataset data = vfs::read_dataset_csv(in);
  vfs::TrainResult r = vfs::train_dynamics(data, c.train);
  write_json(dir / "model.json", vfs::to_json(r.model));
  write_json(dir / "train_report.json", {{"initial_train_loss", r.initial_train_loss},
                                         {"final_train_loss", r.final_train_loss},
                                         {"holdout_loss", r.holdout_loss},
                                         {"holdout_component_mse", r.holdout_component_mse},
                                         {"train_size", r.train_size},
                                         {"holdout_size", r.holdout_size}});
  write_manifest(dir, "train", c, {"model.json", "train_report.json"});
  out << "holdout loss " << r.holdout_loss << ", model written to " << (dir / "model.json").string() << '\n';
  return exit_code::kOk;
}

world::ResetResult start_for(const RunConfig& c, const stl::Formula& phi, std::ostream& err) {
  const std::uint64_t seed = derive_seed(c.seed, streams::kReset);
  try {
    return world::reset_world(c.world, seed, bench::start_constraint_for(phi, c.world));
  } catch (const world::RejectionSamplingError&) {
    err << "warning: no start state clears the negated zones of the formula; starting unconstrained\n";
    return world::reset_world(c.world, seed);
  }
}

int cmd_plan(const RunConfig& c, const fs::path& dir, std::ostream& out, std::ostream& err) {
  stl::Formula phi = require_formula(c);
  vfs::DynamicsModel model = load_model(c);
  auto start = start_for(c, phi, err);
  std::vector<vfs::VfsPoint> history{vfs::embed_state(start.state, start.world)};
  planner::PlanResult p = planner::plan(history, model, phi, c.planner);
  write_json(dir / "plan.json", {{"formula", stl::format_formula(phi)},
                                 {"seed", c.seed},
                                 {"config", to_json(c)},
                                 {"channels", planner::default_channel_names(model.skill_count())},
                                 {"start", state_json(start.state)},
                                 {"skills", p.skills},
                                 {"predicted_robustness", p.predicted_robustness},
                                 {"z_trajectory", points_json(p.predicted_z_trajectory)}});
  write_manifest(dir, "plan", c, {"plan.json"});
  out << "predicted robustness " << p.predicted_robustness << ", skills";
  for (int s : p.skills) out << ' ' << s;
  out << '\n';
  return exit_code::kOk;
}

int cmd_mpc(const RunConfig& c, const fs::path& dir, std::ostream& out, std::ostream& err) {
  stl::Formula phi = require_formula(c);
  vfs::DynamicsModel model = load_model(c);
  auto run = planner::mpc_run(start_for(c, phi, err), model, phi, c.planner);
  nlohmann::json replans = nlohmann::json::array();
  for (const auto& r : run.replans) {
    replans.push_back({{"step", r.step}, {"skills", r.plan.skills}, {"predicted_robustness", r.plan.predicted_robustness}});
  }
  write_json(dir / "run.json", {{"formula", stl::format_formula(phi)},
                                {"seed", c.seed},
                                {"config", to_json(c)},
                                {"start", state_json(run.states.front())},
                                {"executed_skills", run.executed_skills},
                                {"replans", replans},
                                {"realized_z", points_json(run.realized_z)},
                                {"vfs_robustness", run.vfs_robustness},
                                {"ground_truth_robustness", run.ground_truth_robustness},
                                {"trajectory", "trajectory.csv"}});
  std::ostringstream csv;
  world::write_trajectory_csv(csv, run.states, run.active_skill);
  write_file(dir / "trajectory.csv", csv.str());
  write_manifest(dir, "mpc", c, {"run.json", "trajectory.csv"});
  out << "vfs robustness " << run.vfs_robustness << ", ground-truth robustness " << run.ground_truth_robustness
      << '\n';
  return exit_code::kOk;
}

int cmd_bench(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  vfs::DynamicsModel model = load_model(c);
  std::vector<bench::TaskFamily> families;
  try {
    families = bench::parse_families(c.bench.families);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  bench::BenchOptions opts;
  opts.mode = c.bench.mode == "mpc" ? bench::ExecutionMode::Mpc : bench::ExecutionMode::OpenLoop;
  opts.threads = c.bench.parallel;
  auto records = bench::run_benchmark(families, c.bench.samples, c.world, model, c.planner, c.seed, opts);
  std::ostringstream csv;
  bench::write_bench_csv(csv, records);
  write_file(dir / "bench.csv", csv.str());
  std::vector<std::string> outputs{"bench.csv"};
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.failed() ? 1 : 0;
  if (!records.empty() && failed < records.size()) {
    auto summary = bench::summarize(records);
    write_json(dir / "summary.json", bench::to_json(summary));
    std::ostringstream scsv, svg;
    bench::write_summary_csv(scsv, summary);
    bench::write_boxplot_svg(svg, summary);
    write_file(dir / "summary.csv", scsv.str());
    write_file(dir / "boxplot.svg", svg.str());
    outputs.insert(outputs.end(), {"summary.json", "summary.csv", "boxplot.svg"});
    for (const auto& f : summary.families) {
      out << bench::family_name(f.family) << ": vfs q1 " << f.vfs.q1 << " success " << f.vfs.success_rate
          << ", ground truth q1 " << f.ground_truth.q1 << " success " << f.ground_truth.success_rate << '\n';
    }
  }
  write_manifest(dir, "bench", c, outputs);
  out << records.size() << " records, " << failed << " failed\n";
  return exit_code::kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal-logic planning over value function space"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON config document or run manifest")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "Root seed");
    sub->add_option("--out", f.out, "Output directory");
  };
  auto planning = [&](CLI::App* sub) {
    sub->add_option("--formula", f.formula, "STL formula text");
    sub->add_option("--model", f.model, "Dynamics model document");
    sub->add_option("--tau", f.tau, "Environment steps per skill");
    sub->add_option("--horizon", f.horizon, "Plan horizon in macro-steps");
    sub->add_option("--iterations", f.iterations, "MCTS iterations per plan");
    sub->add_option("--ucb-c", f.ucb_c, "Exploration constant");
    sub->add_option("--ucb-variant", f.ucb_variant, "sqrt or uct")->check(CLI::IsMember({"sqrt", "uct"}));
    sub->add_option("--search", f.search, "mcts or exhaustive")->check(CLI::IsMember({"mcts", "exhaustive"}));
  };

  auto* monitor = app.add_subcommand("monitor", "Robustness of a formula over a CSV signal");
  monitor->add_option("--formula", f.formula, "STL formula text")->required();
  monitor->add_option("--signal", f.signal, "Signal CSV")->required();
  monitor->add_option("--t", f.t, "Evaluation time");

  auto* collect = app.add_subcommand("collect", "Random-skill transition dataset");
  common(collect);
  collect->add_option("--tau", f.tau, "Environment steps per skill");
  collect->add_option("--episodes", f.episodes, "Episodes");
  collect->add_option("--macro-steps", f.macro_steps, "Skills per episode");

  auto* train = app.add_subcommand("train", "Fit the dynamics model");
  common(train);
  train->add_option("--dataset", f.dataset, "Dataset CSV");
  train->add_option("--epochs", f.epochs, "Training epochs");

  auto* plan = app.add_subcommand("plan", "Plan a skill sequence from a reset state");
  common(plan);
  planning(plan);

  auto* mpc = app.add_subcommand("mpc", "Closed-loop execution with replanning");
  common(mpc);
  planning(mpc);
  mpc->add_option("--replan-interval", f.replan_interval, "Macro-steps between replans");

  auto* bench = app.add_subcommand("bench", "Random task benchmark");
  common(bench);
  planning(bench);
  bench->add_option("--replan-interval", f.replan_interval, "Macro-steps between replans (mpc mode)");
  bench->add_option("--samples", f.samples, "Samples per family");
  bench->add_option("--families", f.families, "all, or a comma list of sequencing, reach_avoid, stability");
  bench->add_option("--parallel", f.parallel, "Worker threads");
  bench->add_option("--bench-mode", f.bench_mode, "open_loop or mpc")->check(CLI::IsMember({"open_loop", "mpc"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  try {
    RunConfig c = resolve(f);
    if (monitor->parsed()) return cmd_monitor(c, out);
    fs::path dir = prepare_out(f.out);
    if (collect->parsed()) return cmd_collect(c, dir, out);
    if (train->parsed()) return cmd_train(c, dir, out);
    if (plan->parsed()) return cmd_plan(c, dir, out, err);
    if (mpc->parsed()) return cmd_mpc(c, dir, out, err);
    return cmd_bench(c, dir, out);
  } catch (const stl::ParseError& e) {
    err << e.what() << '\n';
    return exit_code::kParseError;
  } catch (const stl::SignalTooShortError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kSignalTooShort;
  } catch (const planner::BudgetExceededError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kGuardViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInvalidInput;
  }
}

}  // namespace vfstl::cli
