#include "vfstl/bench/summary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vfstl::bench {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxStats box_stats(std::span<const double> values, std::size_t total_samples) {
  if (values.empty()) throw std::invalid_argument("box statistics need at least one value");
  std::vector<double> v(values.begin(), values.end());
  BoxStats b;
  b.count = v.size();
  b.min = *std::min_element(v.begin(), v.end());
  b.max = *std::max_element(v.begin(), v.end());
  b.q1 = quantile(v, 0.25);
  b.median = quantile(v, 0.5);
  b.q3 = quantile(v, 0.75);
  const auto wins = std::count_if(v.begin(), v.end(), [](double x) { return x > 0.0; });
  b.success_rate = total_samples == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(total_samples);
  return b;
}

SummaryStats summarize(const std::vector<BenchRecord>& records) {
  std::vector<TaskFamily> order;
  for (const auto& r : records) {
    if (std::find(order.begin(), order.end(), r.family) == order.end()) order.push_back(r.family);
  }
  SummaryStats s;
  for (TaskFamily f : order) {
    FamilySummary fs;
    fs.family = f;
    std::vector<double> vfs, gt;
    for (const auto& r : records) {
      if (r.family != f) continue;
      ++fs.samples;
      if (r.failed()) {
        ++fs.failures;
        continue;
      }
      vfs.push_back(r.vfs_robustness);
      gt.push_back(r.ground_truth_robustness);
    }
    if (vfs.empty()) throw std::invalid_argument("family " + family_name(f) + " has no evaluated records");
    fs.vfs = box_stats(vfs, fs.samples);
    fs.ground_truth = box_stats(gt, fs.samples);
    s.families.push_back(fs);
  }
  return s;
}

namespace {

nlohmann::json box_json(const BoxStats& b) {
  return {{"count", b.count}, {"min", b.min},       {"q1", b.q1},
          {"median", b.median}, {"q3", b.q3}, {"max", b.max}, {"success_rate", b.success_rate}};
}

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

nlohmann::json to_json(const SummaryStats& s) {
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : s.families) {
    fams.push_back({{"family", family_name(f.family)},
                    {"samples", f.samples},
                    {"failures", f.failures},
                    {"vfs", box_json(f.vfs)},
                    {"ground_truth", box_json(f.ground_truth)}});
  }
  return {{"families", fams}};
}

void write_summary_csv(std::ostream& out, const SummaryStats& s) {
  out << "family,space,count,min,q1,median,q3,max,success_rate\n";
  for (const auto& f : s.families) {
    for (auto [space, b] : {std::pair{"vfs", &f.vfs}, std::pair{"ground_truth", &f.ground_truth}}) {
      out << family_name(f.family) << ',' << space << ',' << b->count << ',' << num(b->min) << ',' << num(b->q1) << ','
          << num(b->median) << ',' << num(b->q3) << ',' << num(b->max) << ',' << num(b->success_rate) << '\n';
    }
  }
}

void write_boxplot_svg(std::ostream& out, const SummaryStats& s) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;
  double lo = 0.0, hi = 0.0;
  for (const auto& f : s.families) {
    lo = std::min({lo, f.vfs.min, f.ground_truth.min});
    hi = std::max({hi, f.vfs.max, f.ground_truth.max});
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto y = [&](double v) { return kTop + (hi - v) / (hi - lo) * (kHeight - kTop - kBottom); };
  const double plot_w = kWidth - kLeft - kRight;
  const double group_w = plot_w / static_cast<double>(std::max<std::size_t>(1, s.families.size()));

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y(v) + 4 << "\" text-anchor=\"end\">" << num(std::round(v * 1000) / 1000)
        << "</text>\n";
  }
  out << "<line x1=\"" << kLeft << "\" y1=\"" << y(0) << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << y(0)
      << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"16\" y=\"" << kTop + (kHeight - kTop - kBottom) / 2 << "\" transform=\"rotate(-90 16 "
      << kTop + (kHeight - kTop - kBottom) / 2 << ")\" text-anchor=\"middle\">robustness</text>\n";

  auto box = [&](const BoxStats& b, double cx, const char* color) {
    const double w = group_w * 0.28;
    out << "<line x1=\"" << cx << "\" y1=\"" << y(b.max) << "\" x2=\"" << cx << "\" y2=\"" << y(b.min)
        << "\" stroke=\"black\"/>\n";
    out << "<rect x=\"" << cx - w / 2 << "\" y=\"" << y(b.q3) << "\" width=\"" << w << "\" height=\""
        << std::max(0.5, y(b.q1) - y(b.q3)) << "\" fill=\"" << color << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << cx - w / 2 << "\" y1=\"" << y(b.median) << "\" x2=\"" << cx + w / 2 << "\" y2=\""
        << y(b.median) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  };
  for (std::size_t i = 0; i < s.families.size(); ++i) {
    const double gx = kLeft + group_w * (static_cast<double>(i) + 0.5);
    box(s.families[i].vfs, gx - group_w * 0.18, "#1f77b4");
    box(s.families[i].ground_truth, gx + group_w * 0.18, "#ff7f0e");
    out << "<text x=\"" << gx << "\" y=\"" << kHeight - kBottom + 20 << "\" text-anchor=\"middle\">"
        << family_name(s.families[i].family) << "</text>\n";
  }
  out << "<rect x=\"" << kLeft + 10 << "\" y=\"8\" width=\"10\" height=\"10\" fill=\"#1f77b4\"/>"
      << "<text x=\"" << kLeft + 24 << "\" y=\"17\">value function space</text>\n";
  out << "<rect x=\"" << kLeft + 170 << "\" y=\"8\" width=\"10\" height=\"10\" fill=\"#ff7f0e\"/>"
      << "<text x=\"" << kLeft + 184 << "\" y=\"17\">ground truth (zone distance)</text>\n";
  out << "</svg>\n";
}

}  // namespace vfstl::bench
