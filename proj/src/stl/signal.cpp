#include "vfstl/stl/signal.hpp"

#include <charconv>
#include <sstream>

namespace vfstl::stl {

void Signal::set_channel(std::string name, std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("channel '" + name + "' has no samples");
  bool replacing = channels_.count(name) == 1;
  if (!channels_.empty() && !(replacing && channels_.size() == 1) && samples.size() != length_) {
    throw std::invalid_argument("channel '" + name + "' has " + std::to_string(samples.size()) +
                                " samples, expected " + std::to_string(length_));
  }
  length_ = samples.size();
  channels_[std::move(name)] = std::move(samples);
}

const std::vector<double>& Signal::channel(std::string_view name) const {
  auto it = channels_.find(name);
  if (it == channels_.end()) throw UnknownChannelError(std::string(name));
  return it->second;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Signal read_signal_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("signal CSV is empty");
  std::vector<std::string> header = split_csv_line(line);
  for (const auto& h : header) {
    if (h.empty()) throw std::invalid_argument("signal CSV header has an empty channel name");
  }
  std::vector<std::vector<double>> columns(header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("signal CSV row " + std::to_string(row) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string& c = cells[i];
      double v = 0.0;
      const char* first = c.data();
      if (!c.empty() && c[0] == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size()) {
        throw std::invalid_argument("signal CSV row " + std::to_string(row) + ": '" + c +
                                    "' is not a number");
      }
      columns[i].push_back(v);
    }
  }
  Signal s;
  for (std::size_t i = 0; i < header.size(); ++i) s.set_channel(header[i], std::move(columns[i]));
  return s;
}

void write_signal_csv(std::ostream& out, const Signal& s) {
  bool first = true;
  for (const auto& [name, _] : s.channels()) {
    out << (first ? "" : ",") << name;
    first = false;
  }
  out << '\n';
  char buf[64];
  for (std::size_t t = 0; t < s.length(); ++t) {
    first = true;
    for (const auto& [_, samples] : s.channels()) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), samples[t]);
      (void)ec;
      out << (first ? "" : ",") << std::string_view(buf, ptr - buf);
      first = false;
    }
    out << '\n';
  }
}

}  // namespace vfstl::stl
