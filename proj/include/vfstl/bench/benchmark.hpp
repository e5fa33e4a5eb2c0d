#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "vfstl/bench/tasks.hpp"
#include "vfstl/planner/mcts.hpp"
#include "vfstl/world/world.hpp"

namespace vfstl::bench {

enum class ExecutionMode {
  OpenLoop,  // one plan at t = 0, whole sequence executed
  Mpc,       // replan every cfg.replan_interval macro-steps
};

struct BenchOptions {
  ExecutionMode mode = ExecutionMode::OpenLoop;
  int threads = 1;
};

struct BenchRecord {
  TaskFamily family = TaskFamily::Sequencing;
  int sample = 0;
  std::uint64_t seed = 0;
  std::string formula;
  /// Robustness of the executed trajectory's embeddings.
  double vfs_robustness = 0.0;
  /// Robustness the first plan predicted through the learned model.
  double predicted_robustness = 0.0;
  double ground_truth_robustness = 0.0;
  bool success_vfs = false;
  bool success_gt = false;
  /// Set when the sample threw; robustness values are NaN then.
  std::string error;

  bool failed() const { return !error.empty(); }
};

/// Generates, plans and executes samples_per_family tasks per family.
/// Records are ordered by (family order in `families`, sample index) and
/// do not depend on the thread count.
std::vector<BenchRecord> run_benchmark(const std::vector<TaskFamily>& families, int samples_per_family,
                                       const world::WorldConfig& world, const vfs::VfsDynamics& dynamics,
                                       const planner::PlannerConfig& cfg, std::uint64_t seed,
                                       const BenchOptions& options = {});

/// family, sample, seed, formula, vfs_robustness, predicted_robustness,
/// gt_robustness, success_vfs, success_gt. Failed samples carry nan.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace vfstl::bench
