#include "vfstl/bench/benchmark.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "vfstl/common/seed.hpp"
#include "vfstl/planner/mpc.hpp"
#include "vfstl/stl/parser.hpp"

namespace vfstl::bench {

namespace {

BenchRecord run_sample(TaskFamily family, int family_index, int sample, const world::WorldConfig& world,
                       const vfs::VfsDynamics& dynamics, const planner::PlannerConfig& cfg, std::uint64_t seed,
                       ExecutionMode mode) {
  BenchRecord rec;
  rec.family = family;
  rec.sample = sample;
  rec.seed = derive_seed(seed, streams::kBenchSample,
                         (static_cast<std::uint64_t>(family_index) << 32) | static_cast<std::uint64_t>(sample));
  try {
    stl::Formula phi = gen_formula(family, planner::default_channel_names(dynamics.skill_count()), cfg.horizon,
                                   derive_seed(rec.seed, streams::kFormula));
    rec.formula = stl::format_formula(phi);
    auto start = world::reset_world(world, derive_seed(rec.seed, streams::kReset), start_constraint_for(phi, world));
    planner::PlannerConfig run_cfg = cfg;
    run_cfg.seed = derive_seed(rec.seed, streams::kPlanner);
    if (mode == ExecutionMode::OpenLoop) run_cfg.replan_interval = std::max(1, cfg.horizon);
    auto run = planner::mpc_run(start, dynamics, phi, run_cfg);
    rec.vfs_robustness = run.vfs_robustness;
    rec.predicted_robustness = run.replans.empty() ? run.vfs_robustness : run.replans.front().plan.predicted_robustness;
    rec.ground_truth_robustness = run.ground_truth_robustness;
  } catch (const std::exception& e) {
    rec.error = e.what();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.vfs_robustness = rec.predicted_robustness = rec.ground_truth_robustness = nan;
  }
  rec.success_vfs = rec.vfs_robustness > 0.0;
  rec.success_gt = rec.ground_truth_robustness > 0.0;
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const std::vector<TaskFamily>& families, int samples_per_family,
                                       const world::WorldConfig& world, const vfs::VfsDynamics& dynamics,
                                       const planner::PlannerConfig& cfg, std::uint64_t seed,
                                       const BenchOptions& options) {
  if (samples_per_family < 0) throw std::invalid_argument("samples_per_family must be non-negative");
  cfg.validate();
  const std::size_t per = static_cast<std::size_t>(samples_per_family);
  const std::size_t total = families.size() * per;
  std::vector<BenchRecord> records(total);

  auto work = [&](std::size_t i) {
    const std::size_t f = i / per;
    records[i] = run_sample(families[f], static_cast<int>(families[f]), static_cast<int>(i % per), world, dynamics,
                            cfg, seed, options.mode);
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1 || total < 2) {
    for (std::size_t i = 0; i < total; ++i) work(i);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) work(i);
    });
  }
  pool.clear();
  return records;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "family,sample,seed,formula,vfs_robustness,predicted_robustness,gt_robustness,success_vfs,success_gt\n";
  for (const auto& r : records) {
    out << family_name(r.family) << ',' << r.sample << ',' << r.seed << ",\"" << r.formula << "\"," << num(r.vfs_robustness)
        << ',' << num(r.predicted_robustness) << ',' << num(r.ground_truth_robustness) << ',' << (r.success_vfs ? 1 : 0)
        << ',' << (r.success_gt ? 1 : 0) << '\n';
  }
}

}  // namespace vfstl::bench
