#pragma once

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "vfstl/bench/benchmark.hpp"

namespace vfstl::bench {

/// Quantile by linear interpolation between order statistics:
/// position p * (n - 1) in the sorted sample. The median of an even-sized
/// sample is therefore the midpoint of the two central values.
double quantile(std::vector<double> values, double p);

struct BoxStats {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  /// Fraction of all samples (failed ones included) with robustness > 0.
  double success_rate = 0.0;
};

BoxStats box_stats(std::span<const double> values, std::size_t total_samples);

struct FamilySummary {
  TaskFamily family = TaskFamily::Sequencing;
  std::size_t samples = 0;
  std::size_t failures = 0;
  BoxStats vfs;
  BoxStats ground_truth;
};

struct SummaryStats {
  std::vector<FamilySummary> families;
};

/// Statistics per family in order of first appearance. Throws if a family
/// has no successfully evaluated record.
SummaryStats summarize(const std::vector<BenchRecord>& records);

nlohmann::json to_json(const SummaryStats& s);
/// family, space, count, min, q1, median, q3, max, success_rate
void write_summary_csv(std::ostream& out, const SummaryStats& s);
/// Grouped box plot: one group per family, VFS and ground-truth boxes side by side.
void write_boxplot_svg(std::ostream& out, const SummaryStats& s);

}  // namespace vfstl::bench
