#pragma once

#include "qsca/device.hpp"
#include "qsca/gate.hpp"
#include "qsca/pulse.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsca {

struct LibraryPulse {
  Channel channel;
  int offset = 0; // samples, relative to the gate start
  PulseShape shape;

  bool operator==(const LibraryPulse&) const = default;
};

struct LibraryEntry {
  Gate gate = Gate::X;
  std::vector<int> qubits;
  std::vector<LibraryPulse> pulses;
  int delay = 0; // I only

  /// Time the gate occupies its qubits: max(offset + duration, delay).
  [[nodiscard]] int span() const;

  bool operator==(const LibraryEntry&) const = default;
};

using GateKey = std::pair<Gate, std::vector<int>>;

/// Per-(gate, qubit tuple) calibrated pulse sets of one device.
class BasisPulseLibrary {
public:
  void set(LibraryEntry entry);
  void erase(Gate gate, std::span<const int> qubits);

  [[nodiscard]] const LibraryEntry* find(Gate gate,
                                         std::span<const int> qubits) const;
  [[nodiscard]] const std::map<GateKey, LibraryEntry>& entries() const {
    return entries_;
  }

  bool operator==(const BasisPulseLibrary&) const = default;

private:
  std::map<GateKey, LibraryEntry> entries_;
};

/// Returns the stored pulse set. RZ yields an empty entry; I without an
/// explicit entry delays for the qubit's X duration.
/// Throws Error(UnsupportedGate) for a missing X/SX/CX entry.
LibraryEntry lookup_basis_pulses(const BasisPulseLibrary& lib, Gate gate,
                                 std::span<const int> qubits);

enum class ViolationKind { Coverage, Channel, Granularity, Overlap, Amplitude, Shape };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  Gate gate;
  std::vector<int> qubits;
  std::string message;
};

std::vector<Violation> validate_library(const BasisPulseLibrary& lib,
                                        const Device& device);

} // namespace qsca
