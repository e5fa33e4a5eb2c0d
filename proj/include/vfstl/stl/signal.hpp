#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vfstl::stl {

class UnknownChannelError : public std::runtime_error {
 public:
  explicit UnknownChannelError(const std::string& channel)
      : std::runtime_error("unknown channel '" + channel + "'"), channel_(channel) {}
  const std::string& channel() const { return channel_; }

 private:
  std::string channel_;
};

/// Finite discrete-time signal: named real-valued channels of equal length.
class Signal {
 public:
  Signal() = default;

  /// Adds or replaces a channel. Throws std::invalid_argument on an empty
  /// sample vector or a length different from the existing channels.
  void set_channel(std::string name, std::vector<double> samples);

  std::size_t length() const { return length_; }
  std::size_t channel_count() const { return channels_.size(); }
  bool has_channel(std::string_view name) const { return channels_.find(name) != channels_.end(); }

  const std::vector<double>& channel(std::string_view name) const;
  const std::map<std::string, std::vector<double>, std::less<>>& channels() const { return channels_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::map<std::string, std::vector<double>, std::less<>> channels_;
  std::size_t length_ = 0;
};

/// Reads a signal from CSV: header row of channel identifiers, then one row
/// of decimal reals per timestep.
Signal read_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, const Signal& s);

}  // namespace vfstl::stl
