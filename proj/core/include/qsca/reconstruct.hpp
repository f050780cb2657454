#pragma once

#include "qsca/device.hpp"
#include "qsca/gate.hpp"
#include "qsca/library.hpp"
#include "qsca/tracegen.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsca {

using BitSeries = std::vector<std::uint8_t>;

/// bit i = 1 iff samples[i] > boundary.
BitSeries binarize(std::span<const double> samples, double boundary);
inline BitSeries binarize(const PowerTrace& t, double boundary) {
  return binarize(t.samples, boundary);
}

struct Segment {
  int start = 0;
  int length = 0;

  [[nodiscard]] int end() const { return start + length; }
  bool operator==(const Segment&) const = default;
};

/// Maximal runs of ones, in order.
std::vector<Segment> find_segments(std::span<const std::uint8_t> bits);

/// Either one boundary for every stage, or a staged pair: drive channels
/// are searched for X above `high`, then for SX above `low`.
struct Boundary {
  double high = 0.0;
  std::optional<double> low;

  static Boundary uniform(double b) { return {b, std::nullopt}; }
  static Boundary staged(double hi, double lo) { return {hi, lo}; }

  [[nodiscard]] bool is_staged() const { return low.has_value(); }
  /// Boundary used on control channels and for the final SX stage.
  [[nodiscard]] double lowest() const { return low.value_or(high); }
};

/// Per-channel replacement for any of the global settings.
struct ChannelOverride {
  std::optional<Boundary> boundary;
  std::optional<int> tolerance;
  std::optional<int> smoothing;
  std::optional<int> merge_gap;
};

struct ReconstructionParams {
  Boundary boundary;
  int tolerance = 0; // allowed run-length difference, samples
  // Noise conditioning. Both default off, which is the exact noiseless
  // algorithm. smoothing: centred moving-average window applied to traces
  // and templates alike. merge_gap: join runs separated by <= merge_gap zeros.
  int smoothing = 0;
  int merge_gap = 0;
  std::map<Channel, ChannelOverride> overrides;

  /// Settings in effect on one channel (overrides applied, none left).
  [[nodiscard]] ReconstructionParams for_channel(Channel channel) const;
};

struct FoundGate {
  Gate gate = Gate::X;
  std::vector<int> qubits;
  int start = 0;

  auto operator<=>(const FoundGate&) const = default;
};

struct ReconstructedCircuit {
  std::vector<FoundGate> gates; // sorted by (start, channel)
};

/// A segment no basis gate explained.
struct Leftover {
  Channel channel;
  Segment segment;
};

struct ReconstructionReport {
  ReconstructedCircuit circuit;
  std::vector<Leftover> leftovers;
};

/// Which candidate gates a search stage considers.
enum class SearchStage { Uniform, High, Low };

struct GateMatch {
  Gate gate;
  std::vector<int> qubits;

  bool operator==(const GateMatch&) const = default;
};

/// Binarized form of one basis gate's power on one channel.
struct GateTemplate {
  Gate gate;
  std::vector<int> qubits;
  Channel channel;
  double boundary = 0.0;
  int run_start = -1; // first run, relative to the gate start
  int run_length = 0;  // 0: invisible at this boundary
  double peak = 0.0;   // max processed power
};

/// Precomputed templates for every channel/stage of one library.
class TemplateBank {
public:
  TemplateBank(const BasisPulseLibrary& lib, const Device& device,
               const ReconstructionParams& params);

  /// Candidates searched on `channel` during `stage`.
  [[nodiscard]] const std::vector<GateTemplate>& candidates(Channel channel,
                                                            SearchStage stage) const;
  [[nodiscard]] double boundary_for(Channel channel, SearchStage stage) const;
  [[nodiscard]] const ReconstructionParams& settings(Channel channel) const;

  /// Unique candidate within tolerance, nullptr if none.
  /// Throws Error(Ambiguity) if several match.
  [[nodiscard]] const GateTemplate* match(const Segment& segment, Channel channel,
                                          SearchStage stage) const;

private:
  const ReconstructionParams params_;
  std::map<Channel, ReconstructionParams> resolved_;
  std::map<std::pair<Channel, SearchStage>, std::vector<GateTemplate>> bank_;
};

/// Matches one segment against the basis gates that can appear on the
/// channel at the uniform (or, for staged params, final) boundary.
std::optional<GateMatch> match_gate(const Segment& segment, Channel channel,
                                    const BasisPulseLibrary& lib, const Device& device,
                                    const ReconstructionParams& params,
                                    SearchStage stage = SearchStage::Uniform);

/// Checks the boundary/tolerance coupling against the library; empty = ok.
std::vector<std::string> validate_params(const BasisPulseLibrary& lib,
                                         const Device& device,
                                         const ReconstructionParams& params);

/// Two-phase search/remove over per-channel power traces: control channels
/// first (CX), then drive channels (X, SX). Never throws for unexplained
/// segments; they are reported as leftovers.
ReconstructionReport reconstruct_report(const std::map<Channel, PowerTrace>& traces,
                                        const BasisPulseLibrary& lib,
                                        const Device& device,
                                        const ReconstructionParams& params);

/// As reconstruct_report, but throws Error(IncompleteReconstruction) listing
/// the leftovers if any segment is unexplained.
ReconstructedCircuit reconstruct(const std::map<Channel, PowerTrace>& traces,
                                 const BasisPulseLibrary& lib, const Device& device,
                                 const ReconstructionParams& params);

/// Attacker-side calibration from the library alone. With noise_sigma == 0:
/// one uniform boundary at half the weakest SX peak and tolerance 2. With
/// noise: per-channel boundary at half that channel's weakest template peak,
/// the shortest power-of-two smoothing window that puts the boundary four
/// noise deviations clear, and the widest tolerance the run-length
/// separation allows (at most 24).
ReconstructionParams suggest_params(const BasisPulseLibrary& lib, const Device& device,
                                    double noise_sigma = 0.0);

/// Moving average with a centred window, zero outside the series.
std::vector<double> smooth(std::span<const double> samples, int window);

} // namespace qsca
