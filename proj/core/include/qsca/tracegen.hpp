#pragma once

#include "qsca/device.hpp"
#include "qsca/pulse.hpp"
#include "qsca/scheduler.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace qsca {

/// Uniformly sampled power series, one sample per dt.
struct PowerTrace {
  std::vector<double> samples;
  std::optional<Channel> channel; // empty for a total trace

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  bool operator==(const PowerTrace&) const = default;
};

struct ScalarStats {
  double energy = 0.0;
  int duration = 0;
  double mean_power = 0.0;
};

/// Complex amplitude p_c(x) of one channel over the schedule span.
/// Throws Error(Channel) for a channel the device does not have.
ComplexSeries channel_amplitude(const Schedule& schedule, const Device& device,
                                Channel channel);

/// Re^2 + Im^2 per sample.
std::vector<double> in_channel_power(std::span<const std::complex<double>> amplitude);

/// One trace per device channel, each of length schedule_span.
std::map<Channel, PowerTrace> per_channel_power(const Schedule& schedule,
                                                const Device& device);

/// Equal-weight sum of the per-channel traces, accumulated in channel order.
PowerTrace total_power(const Schedule& schedule, const Device& device);

/// Sums traces element-wise in the given order (equal lengths required).
PowerTrace across_channel_sum(const std::map<Channel, PowerTrace>& per_channel);

/// energy = sum, duration = length, mean = energy / duration.
/// Throws Error(DegenerateTrace) for an empty trace.
ScalarStats scalar_stats(const PowerTrace& trace);

/// Adds i.i.d. N(0, sigma^2) to each sample; deterministic per seed.
PowerTrace add_noise(const PowerTrace& trace, double sigma, std::uint64_t seed);

} // namespace qsca
