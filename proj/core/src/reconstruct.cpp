#include "qsca/reconstruct.hpp"

#include "qsca/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsca {

BitSeries binarize(std::span<const double> samples, double boundary) {
  BitSeries bits(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bits[i] = samples[i] > boundary ? 1 : 0;
  }
  return bits;
}

std::vector<Segment> find_segments(std::span<const std::uint8_t> bits) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < bits.size()) {
    if (!bits[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < bits.size() && bits[j]) {
      ++j;
    }
    out.push_back({static_cast<int>(i), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

std::vector<double> smooth(std::span<const double> samples, int window) {
  if (window <= 1) {
    return {samples.begin(), samples.end()};
  }
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  std::vector<double> prefix(samples.size() + 1, 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    prefix[i + 1] = prefix[i] + samples[i];
  }
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(samples.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto lo = std::clamp<std::ptrdiff_t>(i - half, 0, n);
    const auto hi = std::clamp<std::ptrdiff_t>(i - half + window, 0, n);
    out[static_cast<std::size_t>(i)] =
        (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)]) / window;
  }
  return out;
}

namespace {

std::vector<Segment> merge_close(std::vector<Segment> segs, int gap) {
  if (gap <= 0 || segs.size() < 2) {
    return segs;
  }
  std::vector<Segment> out;
  out.push_back(segs.front());
  for (std::size_t i = 1; i < segs.size(); ++i) {
    auto& last = out.back();
    if (segs[i].start - last.end() <= gap) {
      last.length = segs[i].end() - last.start;
    } else {
      out.push_back(segs[i]);
    }
  }
  return out;
}

std::vector<Segment> segments_of(std::span<const double> samples, double boundary,
                                 const ReconstructionParams& params) {
  const auto processed = smooth(samples, params.smoothing);
  const auto bits = binarize(processed, boundary);
  return merge_close(find_segments(bits), params.merge_gap);
}

// Power an entry deposits on one channel, relative to the gate start.
std::vector<double> entry_power_on(const LibraryEntry& entry, Channel channel) {
  std::vector<double> out(static_cast<std::size_t>(std::max(entry.span(), 0)), 0.0);
  for (const auto& p : entry.pulses) {
    if (p.channel != channel) {
      continue;
    }
    const auto power = sample_power(p.shape);
    for (std::size_t i = 0; i < power.size(); ++i) {
      out[static_cast<std::size_t>(p.offset) + i] += power[i];
    }
  }
  return out;
}

bool touches(const LibraryEntry& entry, Channel channel) {
  return std::any_of(entry.pulses.begin(), entry.pulses.end(),
                     [&](const LibraryPulse& p) { return p.channel == channel; });
}

// The channel a found gate is reported on.
Channel home_channel(const FoundGate& g, const Device& device) {
  if (g.gate == Gate::CX) {
    return Channel::control(*device.edge_index(g.qubits[0], g.qubits[1]));
  }
  return Channel::drive(g.qubits[0]);
}

int round_to_granularity(int t, int g) {
  const double q = std::floor((t + g / 2.0) / g);
  return std::max(0, static_cast<int>(q) * g);
}

void require_one(const ReconstructionParams& params) {
  if (!(params.boundary.high > 0.0)) {
    throw Error(ErrorKind::Format, "boundary must be positive");
  }
  if (params.boundary.is_staged() &&
      !(*params.boundary.low > 0.0 && *params.boundary.low < params.boundary.high)) {
    throw Error(ErrorKind::Format, "staged boundaries need b_hi > b_lo > 0");
  }
  if (params.tolerance < 0 || params.smoothing < 0 || params.merge_gap < 0) {
    throw Error(ErrorKind::Format, "tolerance, smoothing and merge_gap must be >= 0");
  }
}

void require_params(const ReconstructionParams& params) {
  require_one(params);
  for (const auto& [ch, o] : params.overrides) {
    try {
      require_one(params.for_channel(ch));
    } catch (const Error& e) {
      throw Error(ErrorKind::Format, to_string(ch) + ": " + e.what());
    }
  }
}

} // namespace

ReconstructionParams ReconstructionParams::for_channel(Channel channel) const {
  ReconstructionParams out = *this;
  out.overrides.clear();
  if (const auto it = overrides.find(channel); it != overrides.end()) {
    const auto& o = it->second;
    out.boundary = o.boundary.value_or(out.boundary);
    out.tolerance = o.tolerance.value_or(out.tolerance);
    out.smoothing = o.smoothing.value_or(out.smoothing);
    out.merge_gap = o.merge_gap.value_or(out.merge_gap);
  }
  return out;
}

TemplateBank::TemplateBank(const BasisPulseLibrary& lib, const Device& device,
                           const ReconstructionParams& params)
    : params_(params) {
  require_params(params);
  for (const auto ch : device.channels()) {
    resolved_.emplace(ch, params.for_channel(ch));
  }
  const auto add = [&](const LibraryEntry& entry, Channel ch, SearchStage stage) {
    const auto& cp = settings(ch);
    const double b = boundary_for(ch, stage);
    auto power = entry_power_on(entry, ch);
    power = smooth(power, cp.smoothing);
    GateTemplate t{entry.gate, entry.qubits, ch, b, -1, 0, 0.0};
    for (double v : power) {
      t.peak = std::max(t.peak, v);
    }
    const auto segs = merge_close(find_segments(binarize(power, b)), cp.merge_gap);
    if (!segs.empty()) {
      t.run_start = segs.front().start;
      t.run_length = segs.front().length;
    }
    bank_[{ch, stage}].push_back(std::move(t));
  };

  for (const auto& [key, entry] : lib.entries()) {
    if (entry.gate == Gate::CX) {
      const auto e = device.edge_index(entry.qubits[0], entry.qubits[1]);
      if (!e) {
        continue;
      }
      const auto ch = Channel::control(*e);
      if (touches(entry, ch)) {
        add(entry, ch, SearchStage::Uniform);
      }
    } else if (entry.gate == Gate::X || entry.gate == Gate::SX) {
      const auto ch = Channel::drive(entry.qubits[0]);
      if (!touches(entry, ch)) {
        continue;
      }
      add(entry, ch, SearchStage::Uniform);
      if (settings(ch).boundary.is_staged()) {
        add(entry, ch, entry.gate == Gate::X ? SearchStage::High : SearchStage::Low);
      }
    }
  }
}

const ReconstructionParams& TemplateBank::settings(Channel channel) const {
  const auto it = resolved_.find(channel);
  return it == resolved_.end() ? params_ : it->second;
}

double TemplateBank::boundary_for(Channel channel, SearchStage stage) const {
  const auto& b = settings(channel).boundary;
  if (channel.kind == ChannelKind::Control) {
    return b.lowest();
  }
  switch (stage) {
  case SearchStage::High:
  case SearchStage::Uniform:
    return b.high;
  case SearchStage::Low:
    return b.lowest();
  }
  return b.high;
}

const std::vector<GateTemplate>& TemplateBank::candidates(Channel channel,
                                                          SearchStage stage) const {
  static const std::vector<GateTemplate> none;
  if (channel.kind == ChannelKind::Control) {
    stage = SearchStage::Uniform;
  }
  const auto it = bank_.find({channel, stage});
  return it == bank_.end() ? none : it->second;
}

const GateTemplate* TemplateBank::match(const Segment& segment, Channel channel,
                                        SearchStage stage) const {
  const GateTemplate* hit = nullptr;
  const int tolerance = settings(channel).tolerance;
  for (const auto& t : candidates(channel, stage)) {
    if (t.run_length == 0 || std::abs(segment.length - t.run_length) > tolerance) {
      continue;
    }
    if (hit != nullptr) {
      throw Error(ErrorKind::Ambiguity,
                  "segment of length " + std::to_string(segment.length) + " on " +
                      to_string(channel) + " matches both " + to_string(hit->gate) +
                      " and " + to_string(t.gate));
    }
    hit = &t;
  }
  return hit;
}

std::optional<GateMatch> match_gate(const Segment& segment, Channel channel,
                                    const BasisPulseLibrary& lib, const Device& device,
                                    const ReconstructionParams& params, SearchStage stage) {
  const TemplateBank bank(lib, device, params);
  if (bank.settings(channel).boundary.is_staged() && stage == SearchStage::Uniform &&
      channel.kind == ChannelKind::Drive) {
    stage = SearchStage::Low;
  }
  const auto* t = bank.match(segment, channel, stage);
  if (t == nullptr) {
    return std::nullopt;
  }
  return GateMatch{t->gate, t->qubits};
}

std::vector<std::string> validate_params(const BasisPulseLibrary& lib, const Device& device,
                                         const ReconstructionParams& params) {
  std::vector<std::string> out;
  try {
    require_params(params);
  } catch (const Error& e) {
    out.emplace_back(e.what());
    return out;
  }
  const TemplateBank bank(lib, device, params);

  for (int e = 0; e < static_cast<int>(device.edges.size()); ++e) {
    const auto ch = Channel::control(e);
    const auto& cs = bank.candidates(ch, SearchStage::Uniform);
    if (cs.empty()) {
      out.push_back(to_string(ch) + ": no CX pulse on this channel");
    }
    for (const auto& t : cs) {
      if (t.run_length == 0) {
        out.push_back(to_string(ch) + ": CX peak " + std::to_string(t.peak) +
                      " does not exceed the boundary");
      }
    }
  }

  for (int q = 0; q < device.num_qubits; ++q) {
    const auto ch = Channel::drive(q);
    const auto& cs = bank.candidates(ch, SearchStage::Uniform);
    const auto& cp = bank.settings(ch);
    if (!cp.boundary.is_staged()) {
      for (const auto& t : cs) {
        if (t.run_length == 0) {
          out.push_back(to_string(ch) + ": " + to_string(t.gate) + " peak " +
                        std::to_string(t.peak) + " does not exceed the boundary");
        }
      }
      for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
          const int gap = std::abs(cs[i].run_length - cs[j].run_length);
          if (gap <= 2 * cp.tolerance) {
            out.push_back(to_string(ch) + ": " + to_string(cs[i].gate) + "/" +
                          to_string(cs[j].gate) + " run lengths differ by " +
                          std::to_string(gap) + ", need more than " +
                          std::to_string(2 * cp.tolerance));
          }
        }
      }
      continue;
    }
    double x_peak = 0.0;
    double sx_peak = 0.0;
    for (const auto& t : cs) {
      (t.gate == Gate::X ? x_peak : sx_peak) = t.peak;
    }
    const double hi = cp.boundary.high;
    const double lo = *cp.boundary.low;
    if (!(sx_peak < hi && hi < x_peak)) {
      out.push_back(to_string(ch) + ": b_hi " + std::to_string(hi) +
                    " must lie strictly between the SX peak " + std::to_string(sx_peak) +
                    " and the X peak " + std::to_string(x_peak));
    }
    if (!(lo > 0.0 && lo < sx_peak)) {
      out.push_back(to_string(ch) + ": b_lo " + std::to_string(lo) +
                    " must lie strictly between 0 and the SX peak " +
                    std::to_string(sx_peak));
    }
  }
  return out;
}

namespace {

double peak_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, x);
  }
  return m;
}

int first_run_length(std::span<const double> power, double boundary, int merge_gap) {
  const auto segs = merge_close(find_segments(binarize(power, boundary)), merge_gap);
  return segs.empty() ? 0 : segs.front().length;
}

} // namespace

ReconstructionParams suggest_params(const BasisPulseLibrary& lib, const Device& device,
                                    double noise_sigma) {
  if (!(noise_sigma >= 0.0)) {
    throw Error(ErrorKind::Format, "noise sigma must be non-negative");
  }
  // Template power of every gate that is searched for, per channel.
  std::map<Channel, std::vector<std::vector<double>>> templates;
  for (const auto& [key, entry] : lib.entries()) {
    if (entry.gate == Gate::CX) {
      if (const auto e = device.edge_index(entry.qubits[0], entry.qubits[1])) {
        templates[Channel::control(*e)].push_back(entry_power_on(entry, Channel::control(*e)));
      }
    } else if (entry.gate == Gate::X || entry.gate == Gate::SX) {
      templates[Channel::drive(entry.qubits[0])].push_back(
          entry_power_on(entry, Channel::drive(entry.qubits[0])));
    }
  }

  ReconstructionParams params;
  double weakest_sx = INFINITY;
  for (const auto& [key, entry] : lib.entries()) {
    if (entry.gate == Gate::SX && !entry.pulses.empty()) {
      weakest_sx = std::min(weakest_sx, peak_of(sample_power(entry.pulses.front().shape)));
    }
  }
  if (!std::isfinite(weakest_sx) || weakest_sx <= 0.0) {
    throw Error(ErrorKind::InvalidShape, "library has no visible SX pulse to calibrate against");
  }
  params.boundary = Boundary::uniform(0.5 * weakest_sx);
  params.tolerance = 2;
  if (noise_sigma == 0.0) {
    return params;
  }

  constexpr int kMaxTolerance = 24;
  for (const auto& [ch, powers] : templates) {
    // Smallest window giving a boundary four noise deviations clear of zero,
    // else the window with the best margin.
    int window = 1;
    double boundary = 0.0;
    double best_margin = -1.0;
    for (int w = 1; w <= 128; w *= 2) {
      double weakest = INFINITY;
      for (const auto& p : powers) {
        weakest = std::min(weakest, peak_of(smooth(p, w)));
      }
      const double margin = 0.5 * weakest * std::sqrt(static_cast<double>(w)) / noise_sigma;
      if (margin > best_margin) {
        best_margin = margin;
        window = w;
        boundary = 0.5 * weakest;
      }
      if (margin >= 4.0) {
        break;
      }
    }
    ChannelOverride o;
    o.boundary = Boundary::uniform(boundary);
    o.smoothing = window > 1 ? window : 0;
    o.merge_gap = std::max(2, window / 4);
    int gap = 2 * kMaxTolerance + 1;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      for (std::size_t j = i + 1; j < powers.size(); ++j) {
        const int li = first_run_length(smooth(powers[i], window), boundary, *o.merge_gap);
        const int lj = first_run_length(smooth(powers[j], window), boundary, *o.merge_gap);
        gap = std::min(gap, std::abs(li - lj));
      }
    }
    o.tolerance = std::max(0, std::min(kMaxTolerance, (gap - 1) / 2));
    params.overrides.emplace(ch, o);
  }
  return params;
}

namespace {

class Reconstructor {
public:
  Reconstructor(const std::map<Channel, PowerTrace>& traces, const BasisPulseLibrary& lib,
                const Device& device, const ReconstructionParams& params)
      : lib_(lib), device_(device), bank_(lib, device, params) {
    for (const auto ch : device.channels()) {
      const auto it = traces.find(ch);
      if (it == traces.end()) {
        throw Error(ErrorKind::Channel, "no trace for channel " + to_string(ch));
      }
      work_.emplace(ch, it->second.samples);
    }
    for (const auto& [ch, t] : traces) {
      if (!device.has_channel(ch)) {
        throw Error(ErrorKind::Channel, "trace for unknown channel " + to_string(ch));
      }
    }
  }

  ReconstructionReport run() {
    for (int e = 0; e < static_cast<int>(device_.edges.size()); ++e) {
      search(Channel::control(e), SearchStage::Uniform);
    }
    for (int q = 0; q < device_.num_qubits; ++q) {
      const auto ch = Channel::drive(q);
      if (bank_.settings(ch).boundary.is_staged()) {
        search(ch, SearchStage::High);
        search(ch, SearchStage::Low);
      } else {
        search(ch, SearchStage::Uniform);
      }
    }

    // Whatever is still above the lowest boundary was not explained.
    for (auto& [ch, samples] : work_) {
      const double b = bank_.boundary_for(ch, SearchStage::Low);
      for (const auto& seg : segments_of(samples, b, bank_.settings(ch))) {
        report_.leftovers.push_back({ch, seg});
      }
    }

    auto& gates = report_.circuit.gates;
    std::sort(gates.begin(), gates.end(), [&](const FoundGate& a, const FoundGate& b) {
      const auto ca = home_channel(a, device_);
      const auto cb = home_channel(b, device_);
      return std::tie(a.start, ca) < std::tie(b.start, cb);
    });
    return std::move(report_);
  }

private:
  void search(Channel ch, SearchStage stage) {
    const double b = bank_.boundary_for(ch, stage);
    const auto segs = segments_of(work_.at(ch), b, bank_.settings(ch));
    for (const auto& seg : segs) {
      const GateTemplate* t = bank_.match(seg, ch, stage);
      if (t == nullptr) {
        continue;
      }
      // Align run centres: identical to aligning run starts when the lengths
      // agree, and half as sensitive to edge jitter when they do not.
      const int twice = 2 * seg.start + seg.length - (2 * t->run_start + t->run_length);
      const int start = round_to_granularity(twice, 2 * device_.granularity) / 2;
      report_.circuit.gates.push_back({t->gate, t->qubits, start});
      remove(lookup_basis_pulses(lib_, t->gate, t->qubits), start);
    }
  }

  // Subtracts the synthesized power of an entry placed at `start`.
  void remove(const LibraryEntry& entry, int start) {
    for (const auto& p : entry.pulses) {
      auto& samples = work_.at(p.channel);
      const auto power = sample_power(p.shape);
      const double floor = -1e-9 * std::max(1e-300, *std::max_element(power.begin(), power.end()));
      for (std::size_t i = 0; i < power.size(); ++i) {
        const std::size_t at = static_cast<std::size_t>(start + p.offset) + i;
        if (at >= samples.size()) {
          break;
        }
        double v = samples[at] - power[i];
        if (v < 0.0 && v > floor) {
          v = 0.0;
        }
        samples[at] = v;
      }
    }
  }

  const BasisPulseLibrary& lib_;
  const Device& device_;
  TemplateBank bank_;
  std::map<Channel, std::vector<double>> work_;
  ReconstructionReport report_;
};

} // namespace

ReconstructionReport reconstruct_report(const std::map<Channel, PowerTrace>& traces,
                                        const BasisPulseLibrary& lib, const Device& device,
                                        const ReconstructionParams& params) {
  return Reconstructor(traces, lib, device, params).run();
}

ReconstructedCircuit reconstruct(const std::map<Channel, PowerTrace>& traces,
                                 const BasisPulseLibrary& lib, const Device& device,
                                 const ReconstructionParams& params) {
  auto report = reconstruct_report(traces, lib, device, params);
  if (!report.leftovers.empty()) {
    std::ostringstream os;
    os << report.leftovers.size() << " unexplained segment(s):";
    std::size_t shown = 0;
    for (const auto& l : report.leftovers) {
      if (shown++ == 5) {
        os << " ...";
        break;
      }
      os << " " << to_string(l.channel) << "@" << l.segment.start << "+" << l.segment.length;
    }
    throw Error(ErrorKind::IncompleteReconstruction, os.str());
  }
  return std::move(report.circuit);
}

} // namespace qsca
