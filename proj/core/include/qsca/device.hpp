#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsca {

enum class ChannelKind { Drive, Control };

/// A logical wire carrying pulses. Drive channels are indexed by qubit,
/// control channels by position in the device's directed edge list.
struct Channel {
  ChannelKind kind = ChannelKind::Drive;
  int index = 0;

  static constexpr Channel drive(int qubit) { return {ChannelKind::Drive, qubit}; }
  static constexpr Channel control(int edge) { return {ChannelKind::Control, edge}; }

  auto operator<=>(const Channel&) const = default;
};

/// "drive/3", "control/7"
std::string to_string(Channel channel);
Channel parse_channel(std::string_view text);
const char* to_string(ChannelKind kind);

struct Edge {
  int control = 0;
  int target = 0;

  auto operator<=>(const Edge&) const = default;
};

struct Device {
  std::string name;
  int num_qubits = 0;
  std::vector<Edge> edges;
  int granularity = 1;
  double dt = 0.0;

  /// Index of the directed edge control->target, if present.
  [[nodiscard]] std::optional<int> edge_index(int control, int target) const;

  [[nodiscard]] bool has_channel(Channel channel) const;

  /// Drive channels in qubit order, then control channels in edge order.
  [[nodiscard]] std::vector<Channel> channels() const;

  [[nodiscard]] int num_channels() const {
    return num_qubits + static_cast<int>(edges.size());
  }

  /// Throws Error(InvalidDevice) on a broken invariant.
  void validate() const;
};

/// Rounds up to the next multiple of granularity.
constexpr int align_up(int t, int granularity) {
  return ((t + granularity - 1) / granularity) * granularity;
}

} // namespace qsca
