#include "qsca/tracegen.hpp"

#include "qsca/error.hpp"
#include "qsca/rng.hpp"

#include <map>
#include <tuple>

namespace qsca {

namespace {

using ShapeKey = std::tuple<int, int, double, double, double, double, int>;

ShapeKey key_of(const PulseShape& s) {
  return {static_cast<int>(s.kind), s.duration, s.amp.real(), s.amp.imag(),
          s.sigma, s.beta, s.width};
}

// Sampling dominates trace synthesis and a library has few distinct shapes,
// so envelopes are memoised per thread.
const ComplexSeries& cached_envelope(const PulseShape& shape) {
  thread_local std::map<ShapeKey, ComplexSeries> cache;
  constexpr std::size_t kMaxEntries = 4096;
  auto key = key_of(shape);
  if (auto it = cache.find(key); it != cache.end()) {
    return it->second;
  }
  if (cache.size() >= kMaxEntries) {
    cache.clear();
  }
  return cache.emplace(std::move(key), sample(shape)).first->second;
}

} // namespace

ComplexSeries channel_amplitude(const Schedule& schedule, const Device& device,
                                Channel channel) {
  if (!device.has_channel(channel)) {
    throw Error(ErrorKind::Channel,
                "device '" + device.name + "' has no channel " + to_string(channel));
  }
  ComplexSeries out(static_cast<std::size_t>(schedule_span(schedule)));
  for (const auto& item : schedule.items) {
    if (item.channel != channel) {
      continue;
    }
    const auto& env = cached_envelope(item.shape);
    for (std::size_t i = 0; i < env.size(); ++i) {
      out[static_cast<std::size_t>(item.start) + i] += env[i];
    }
  }
  return out;
}

std::vector<double> in_channel_power(std::span<const std::complex<double>> amplitude) {
  std::vector<double> out(amplitude.size());
  for (std::size_t i = 0; i < amplitude.size(); ++i) {
    const double re = amplitude[i].real();
    const double im = amplitude[i].imag();
    out[i] = re * re + im * im;
  }
  return out;
}

std::map<Channel, PowerTrace> per_channel_power(const Schedule& schedule,
                                                const Device& device) {
  const auto span = static_cast<std::size_t>(schedule_span(schedule));
  std::map<Channel, ComplexSeries> amp;
  for (const auto ch : device.channels()) {
    amp.emplace(ch, ComplexSeries(span));
  }
  for (const auto& item : schedule.items) {
    const auto it = amp.find(item.channel);
    if (it == amp.end()) {
      throw Error(ErrorKind::Channel, "schedule uses channel " + to_string(item.channel) +
                                          " absent from device '" + device.name + "'");
    }
    const auto& env = cached_envelope(item.shape);
    for (std::size_t i = 0; i < env.size(); ++i) {
      it->second[static_cast<std::size_t>(item.start) + i] += env[i];
    }
  }
  std::map<Channel, PowerTrace> out;
  for (const auto& [ch, a] : amp) {
    out.emplace(ch, PowerTrace{in_channel_power(a), ch});
  }
  return out;
}

PowerTrace across_channel_sum(const std::map<Channel, PowerTrace>& per_channel) {
  PowerTrace total;
  bool first = true;
  for (const auto& [ch, t] : per_channel) {
    if (first) {
      total.samples.assign(t.size(), 0.0);
      first = false;
    } else if (t.size() != total.size()) {
      throw Error(ErrorKind::ShapeMismatch, "per-channel traces differ in length (" +
                                                to_string(ch) + ")");
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      total.samples[i] += t.samples[i];
    }
  }
  return total;
}

PowerTrace total_power(const Schedule& schedule, const Device& device) {
  return across_channel_sum(per_channel_power(schedule, device));
}

ScalarStats scalar_stats(const PowerTrace& trace) {
  if (trace.samples.empty()) {
    throw Error(ErrorKind::DegenerateTrace, "mean power of an empty trace is undefined");
  }
  ScalarStats s;
  for (double v : trace.samples) {
    s.energy += v;
  }
  s.duration = static_cast<int>(trace.size());
  s.mean_power = s.energy / s.duration;
  return s;
}

PowerTrace add_noise(const PowerTrace& trace, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    throw Error(ErrorKind::Format, "noise sigma must be non-negative");
  }
  PowerTrace out = trace;
  if (sigma == 0.0) {
    return out;
  }
  Rng rng(seed);
  for (auto& v : out.samples) {
    v += sigma * rng.normal();
  }
  return out;
}

} // namespace qsca
