#pragma once

#include "qsca/circuit.hpp"
#include "qsca/device.hpp"
#include "qsca/library.hpp"
#include "qsca/pulse.hpp"

#include <string>
#include <vector>

namespace qsca {

struct ScheduleItem {
  Channel channel;
  int start = 0;
  PulseShape shape;
  int gate_index = 0; // index into the source circuit's ops

  [[nodiscard]] int end() const { return start + shape.duration; }

  bool operator==(const ScheduleItem&) const = default;
};

struct GateRecord {
  Gate gate = Gate::X;
  std::vector<int> qubits;
  int start = 0;
  int duration = 0;

  bool operator==(const GateRecord&) const = default;
};

/// The pulse-level circuit: timed pulses per channel plus one record per
/// scheduled gate (barriers excluded).
struct Schedule {
  std::string device;
  std::vector<ScheduleItem> items;
  std::vector<GateRecord> gates;

  bool operator==(const Schedule&) const = default;
};

/// ASAP lowering. A gate starts at the latest ready time of its operands,
/// rounded up to the device granularity; RZ and measure take no time; CX
/// holds both operands for the whole entry span; barriers synchronise.
/// Throws Error(UnsupportedGate) for a missing library entry.
Schedule schedule(const Circuit& circuit, const BasisPulseLibrary& lib,
                  const Device& device);

/// max(start + duration) over items; 0 when there are none.
int schedule_span(const Schedule& schedule);

} // namespace qsca
